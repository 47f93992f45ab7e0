#include "btq/formulas.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "btq/errors.hpp"
#include "btq/gfpoly.hpp"

namespace btq {

namespace {

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = 2;
  while (q % p) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceGuard("formula value exceeds 64-bit range");
  return r;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r = checked_mul(r, b);
  return r;
}

}  // namespace

RamProfile::RamProfile(int q_, std::vector<int> degrees_) : q(q_), degrees(std::move(degrees_)) {
  if (!is_prime_power(q)) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
  if (degrees.size() < 2 || degrees.size() % 2 != 0)
    throw InvalidArgument("a ramification profile needs an even number (>= 2) of places");
  for (int d : degrees)
    if (d < 1) throw InvalidArgument("place degrees must be positive");
  std::sort(degrees.begin(), degrees.end());
}

std::string RamProfile::to_string() const {
  std::string s = "q=" + std::to_string(q) + " R={";
  for (std::size_t k = 0; k < degrees.size(); ++k) s += (k ? "," : "") + std::to_string(degrees[k]);
  return s + "}";
}

int wp(const RamProfile& R) {
  for (int d : R.degrees)
    if (d % 2 == 0) return 0;
  return 1;
}

long long genus(const RamProfile& R) {
  // g (q^2 - 1) = (q^2 - 1) + prod(q_x - 1) - q (q - 1) 2^{#R-1} wp
  const long long q = R.q;
  long long prod = 1;
  for (int d : R.degrees) prod = checked_mul(prod, ipow(q, d) - 1);
  const long long num = (q * q - 1) + prod - q * (q - 1) * (1LL << (R.degrees.size() - 1)) * wp(R);
  if (num % (q * q - 1) != 0) throw NonIntegral("genus is not an integer for " + R.to_string());
  return num / (q * q - 1);
}

long long v1(const RamProfile& R) { return (1LL << (R.degrees.size() - 1)) * wp(R); }

long long vq1(const RamProfile& R) {
  const long long num = 2 * genus(R) - 2 + v1(R);
  if (num % (R.q - 1) != 0) throw NonIntegral("V_{q+1} is not an integer for " + R.to_string());
  return num / (R.q - 1);
}

long long edges(const RamProfile& R) {
  const long long num = v1(R) + (R.q + 1) * vq1(R);
  if (num % 2 != 0) throw NonIntegral("edge count is not an integer for " + R.to_string());
  return num / 2;
}

bool euler_check(const RamProfile& R) { return edges(R) + 1 == genus(R) + v1(R) + vq1(R); }

long long eichler_count(const RamProfile& R) { return (1LL << R.degrees.size()) * wp(R); }

bool realizable(const RamProfile& R) {
  std::map<int, int> mult;
  for (int d : R.degrees) ++mult[d];
  for (auto [d, m] : mult)
    if (m > count_irreducible(R.q, d)) return false;
  return true;
}

std::vector<RamProfile> enumerate_profiles(int q, const std::vector<int>& sizes, int max_degree) {
  std::vector<RamProfile> out;
  for (int n : sizes) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int min_d) {
      if (static_cast<int>(cur.size()) == n) {
        RamProfile R(q, cur);
        if (realizable(R)) out.push_back(R);
        return;
      }
      for (int d = min_d; d <= max_degree; ++d) {
        cur.push_back(d);
        rec(d);
        cur.pop_back();
      }
    };
    rec(1);
  }
  return out;
}

}  // namespace btq
