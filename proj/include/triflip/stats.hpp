#pragma once
// Small statistics kit shared by tests, the acceptance suite and the CLI:
// chi-square goodness of fit, Kolmogorov-Smirnov against a discrete CDF,
// and least-squares line fits for the scaling experiments.

#include <cstdint>
#include <functional>
#include <vector>

namespace triflip {

// 1 - alpha quantile of the chi-squared distribution with df degrees of freedom.
double chi2_quantile(double df, double one_minus_alpha);

struct Chi2Result {
  double statistic = 0.0;
  double threshold = 0.0;
  std::int64_t df = 0;
  bool pass = true;  // statistic <= threshold (or df == 0)
};

// observed counts vs expected probabilities (must sum to ~1)
Chi2Result chi2_test(const std::vector<std::int64_t>& observed,
                     const std::vector<double>& probs, double alpha);

// uniform-probability convenience
Chi2Result chi2_uniform_test(const std::vector<std::int64_t>& observed, double alpha);

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  std::int64_t n = 0;
  bool pass = true;
};

// sup_k |F_emp(k) - cdf(k)| over integer support; threshold is the
// asymptotic Kolmogorov critical value (conservative for discrete laws)
KsResult ks_test_discrete(const std::vector<std::int64_t>& samples,
                          const std::function<double(std::int64_t)>& cdf, double alpha);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace triflip
