#include "triflip/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace triflip {

double chi2_quantile(double df, double one_minus_alpha) {
  boost::math::chi_squared dist(df);
  return boost::math::quantile(dist, one_minus_alpha);
}

Chi2Result chi2_test(const std::vector<std::int64_t>& observed,
                     const std::vector<double>& probs, double alpha) {
  if (observed.size() != probs.size())
    throw std::invalid_argument("chi2_test: size mismatch");
  Chi2Result r;
  r.df = static_cast<std::int64_t>(observed.size()) - 1;
  if (r.df <= 0) return r;  // single class: trivially consistent
  std::int64_t total = 0;
  for (const auto o : observed) total += o;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = probs[i] * static_cast<double>(total);
    if (e <= 0.0) throw std::invalid_argument("chi2_test: zero expected count");
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
  }
  r.threshold = chi2_quantile(static_cast<double>(r.df), 1.0 - alpha);
  r.pass = r.statistic <= r.threshold;
  return r;
}

Chi2Result chi2_uniform_test(const std::vector<std::int64_t>& observed, double alpha) {
  const std::vector<double> probs(observed.size(), 1.0 / static_cast<double>(observed.size()));
  return chi2_test(observed, probs, alpha);
}

KsResult ks_test_discrete(const std::vector<std::int64_t>& samples,
                          const std::function<double(std::int64_t)>& cdf, double alpha) {
  KsResult r;
  r.n = static_cast<std::int64_t>(samples.size());
  if (r.n == 0) return r;
  std::vector<std::int64_t> s = samples;
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(r.n);
  double sup = 0.0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double femp_before = static_cast<double>(i) / n;
    const double femp_after = static_cast<double>(j) / n;
    const double f = cdf(s[i]);
    const double fprev = cdf(s[i] - 1);
    sup = std::max(sup, std::abs(femp_after - f));
    sup = std::max(sup, std::abs(femp_before - fprev));
    i = j;
  }
  r.statistic = sup;
  // Kolmogorov: P(K > x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2); solve for alpha
  double lo = 0.0, hi = 4.0;
  const auto tail = [](double x) {
    double t = 0.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * x * x);
      t += term;
      if (std::abs(term) < 1e-16) break;
    }
    return t;
  };
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  r.threshold = hi / std::sqrt(n);
  r.pass = r.statistic <= r.threshold;
  return r;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fit_line: need at least 3 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  if (x.size() > 2) {
    const double s2 = ss / (n - 2.0);
    f.slope_stderr = std::sqrt(s2 * n / denom);
  }
  return f;
}

}  // namespace triflip
