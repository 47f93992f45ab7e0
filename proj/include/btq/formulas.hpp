#pragma once

// Closed-form invariants of the quotient attached to a ramification profile
// (q and the degrees of the ramified places).

#include <string>
#include <vector>

namespace btq {

struct RamProfile {
  int q = 0;
  std::vector<int> degrees;  // sorted ascending

  RamProfile() = default;
  // Validates: q a prime power, |degrees| even and >= 2, degrees >= 1.
  RamProfile(int q, std::vector<int> degrees);
  std::string to_string() const;
};

// 0 if some ramified place has even degree, 1 otherwise.
int wp(const RamProfile& R);
// 1 + prod(q_x - 1)/(q^2 - 1) - q/(q+1) 2^{#R-1} wp. NonIntegral if the
// value is not an integer.
long long genus(const RamProfile& R);
long long v1(const RamProfile& R);
long long vq1(const RamProfile& R);
long long edges(const RamProfile& R);
// E + 1 == g + V1 + V_{q+1}
bool euler_check(const RamProfile& R);
// 2^{#R} wp, with class number h(A) = 1 for A = F_q[T].
long long eichler_count(const RamProfile& R);

// True iff the profile is realized by actual places: at most as many places
// of degree d as there are monic irreducibles of degree d over F_q.
bool realizable(const RamProfile& R);

// All realizable profiles with #R in sizes and degrees in [1, max_degree].
std::vector<RamProfile> enumerate_profiles(int q, const std::vector<int>& sizes, int max_degree);

}  // namespace btq
