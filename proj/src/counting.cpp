#include "triflip/counting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace triflip {

namespace {

BigInt factorial_big(std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

// double factorial with (-1)!! = 1, (-3)!! = -1
BigInt dfact_big(std::int64_t k) {
  if (k == -1) return 1;
  if (k == -3) return -1;
  if (k < 0) throw std::invalid_argument("dfact: argument below -3");
  BigInt r = 1;
  for (std::int64_t i = k; i > 1; i -= 2) r *= i;
  return r;
}

bool class_empty(std::int64_t n, std::int64_t p) {
  if (n < 0 || p < 1) return true;
  return n == 0 && p == 1;
}

thread_local std::vector<double> lfact_tab{0.0, 0.0};  // lfact_tab[k] = log k!

void ensure_lfact(std::int64_t k) {
  while (static_cast<std::int64_t>(lfact_tab.size()) <= k) {
    const double n = static_cast<double>(lfact_tab.size());
    lfact_tab.push_back(lfact_tab.back() + std::log(n));
  }
}

double lfact(std::int64_t k) {
  ensure_lfact(k);
  return lfact_tab[k];
}

constexpr double kLn2 = 0.6931471805599453094172321214581766;

double ldfact(std::int64_t k) {
  if (k == -1) return 0.0;
  if (k < -1) throw std::invalid_argument("ldfact: negative double factorial");
  if (k % 2 == 0) {
    const std::int64_t m = k / 2;  // (2m)!! = 2^m m!
    return m * kLn2 + lfact(m);
  }
  const std::int64_t m = (k + 1) / 2;  // (2m-1)!! = (2m)!/(2^m m!)
  return lfact(2 * m) - m * kLn2 - lfact(m);
}

}  // namespace

BigInt count_boundary(std::int64_t n, std::int64_t p) {
  if (class_empty(n, p)) return 0;
  // prefactor p(2p)!/(p!)^2 is an integer (p * central binomial)
  const BigInt pre = p * (factorial_big(2 * p) / (factorial_big(p) * factorial_big(p)));
  // 4^{n-1} with n = 0 handled as a division by 4 at the end
  BigInt num = pre * dfact_big(2 * p + 3 * n - 5);
  if (n >= 1)
    num <<= 2 * (n - 1);
  BigInt den = factorial_big(n) * dfact_big(2 * p + n - 1);
  if (n == 0) den <<= 2;
  if (num % den != 0) throw std::logic_error("count_boundary: non-integer result");
  BigInt r = num / den;
  if (r < 0) throw std::logic_error("count_boundary: negative result");
  return r;
}

BigInt count_sphere(std::int64_t n) {
  if (n < 3) throw std::invalid_argument("count_sphere: n >= 3 required");
  const BigInt num = 2 * (BigInt(1) << (2 * (n - 2))) * dfact_big(3 * n - 6);
  const BigInt den = factorial_big(n - 1) * dfact_big(n);
  if (num % den != 0) throw std::logic_error("count_sphere: non-integer result");
  return num / den;
}

double lambda_c() { return 1.0 / (12.0 * std::sqrt(3.0)); }

double asymptotic_C(std::int64_t p) {
  // 3^{p-2} p (2p)! / (4 sqrt(2 pi) (p!)^2), evaluated in log space
  const double lg = (p - 2) * std::log(3.0) + std::log(static_cast<double>(p)) +
                    lfact(2 * p) - 2.0 * lfact(p) -
                    std::log(4.0 * std::sqrt(2.0 * M_PI));
  return std::exp(lg);
}

double log_count_boundary(std::int64_t n, std::int64_t p) {
  if (class_empty(n, p)) return -std::numeric_limits<double>::infinity();
  return std::log(static_cast<double>(p)) + lfact(2 * p) - 2.0 * lfact(p) +
         (n - 1) * std::log(4.0) + ldfact(2 * p + 3 * n - 5) - lfact(n) -
         ldfact(2 * p + n - 1);
}

double asymptotic_ratio(std::int64_t n, std::int64_t p) {
  const BigInt c = count_boundary(n, p);
  if (c == 0) throw std::invalid_argument("asymptotic_ratio: empty class");
  // log of the big integer via its floating conversion
  const double logc = static_cast<double>(boost::multiprecision::log(
      boost::multiprecision::cpp_bin_float_100(c)));
  const double lg = logc + n * std::log(lambda_c()) + 2.5 * std::log(static_cast<double>(n)) -
                    ((p - 2) * std::log(3.0) + std::log(static_cast<double>(p)) + lfact(2 * p) -
                     2.0 * lfact(p) - std::log(4.0 * std::sqrt(2.0 * M_PI)));
  return std::exp(lg);
}

const BigInt& CountTable::get(std::int64_t n, std::int64_t p) {
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(p);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, count_boundary(n, p)).first;
  return it->second;
}

CountTable& global_count_table() {
  static CountTable table;
  return table;
}

}  // namespace triflip
