#pragma once
// Exact enumeration of type-I triangulations:
//   boundary classes T_{n,p} (p-gon, n inner vertices) and spheres T_n.
//
// count_boundary evaluates
//   #T_{n,p} = p(2p)!/(p!)^2 * 4^{n-1} (2p+3n-5)!! / (n! (2p+n-1)!!)
// with (-1)!! = 1, (-3)!! = -1, extended by 0 at (0,1) where no map
// exists. The degenerate class (0,2) counts 1: the single-edge map (a
// 2-gon glued shut), which is what the peeling recursion produces and
// what the formula evaluates to.

#include <cstdint>
#include <mutex>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace triflip {

using BigInt = boost::multiprecision::cpp_int;

// #T_{n,p}; exact, 0 where the class is empty.
BigInt count_boundary(std::int64_t n, std::int64_t p);

// #T_n = #T_{n-1,1} = 2*4^{n-2}(3n-6)!!/((n-1)! n!!), n >= 3.
BigInt count_sphere(std::int64_t n);

// count_boundary(n,p) * lambda_c^n * n^{5/2} / C(p), where
// lambda_c = 1/(12 sqrt 3) and C(p) = 3^{p-2} p (2p)!/(4 sqrt(2 pi) (p!)^2).
// Tends to 1 as n grows.
double asymptotic_ratio(std::int64_t n, std::int64_t p);

double lambda_c();
double asymptotic_C(std::int64_t p);

// log #T_{n,p} in double precision (for the large-n sampling path);
// -inf for empty classes.
double log_count_boundary(std::int64_t n, std::int64_t p);

// Memoized exact counts; safe for concurrent readers and writers.
class CountTable {
 public:
  const BigInt& get(std::int64_t n, std::int64_t p);

 private:
  std::mutex mu_;
  std::unordered_map<std::uint64_t, BigInt> memo_;
};

CountTable& global_count_table();

}  // namespace triflip
