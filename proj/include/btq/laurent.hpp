#pragma once

// K = F_q((u)), u = 1/T, as truncated Laurent series.
//
// A value is  sum_{k} c_k u^{val+k}  +  O(u^abs).  Values coming from
// polynomials (and products/sums of such) carry abs = kExact and no error
// term. Arithmetic tracks absolute precision pessimistically.

#include <array>
#include <string>
#include <vector>

#include "btq/gfpoly.hpp"

namespace btq {

inline constexpr int kDefaultPrecision = 64;
inline constexpr int kMaxPrecision = 4096;
// Fewest correct terms an inversion or square root may return.
inline constexpr int kMinCorrectTerms = 8;

class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 29;

  LaurentSeries() = default;
  LaurentSeries(const Field& f, int val, std::vector<Elt> coeffs, int abs_prec);

  // Zero known up to O(u^abs).
  static LaurentSeries zero(const Field& f, int abs_prec = kExact);
  static LaurentSeries one(const Field& f) { return monomial(f, 1, 0); }
  static LaurentSeries monomial(const Field& f, Elt c, int exponent);
  // Finite Laurent polynomial sum coeffs[k] u^{val+k}, exact.
  static LaurentSeries exact(const Field& f, int val, std::vector<Elt> coeffs);
  // Exact image of a polynomial in T (T^k = u^{-k}).
  static LaurentSeries from_poly(const Poly& p);
  static LaurentSeries constant(FieldElem c) { return monomial(c.field(), c.raw(), 0); }

  const Field& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  bool is_exact() const { return abs_ >= kExact; }
  // ord_inf; for a zero-to-precision value this is its absolute precision.
  int val() const { return val_; }
  int abs_prec() const { return abs_; }
  // Number of correct terms from the leading one on.
  int prec() const { return abs_ - val_; }
  // Coefficient of u^exponent; PrecisionLoss if it is not known.
  Elt coeff(int exponent) const;
  Elt lc() const;
  // Highest exponent with a stored nonzero coefficient (exact values only
  // are guaranteed to vanish beyond it).
  int top_exponent() const { return val_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<Elt>& coeffs() const { return c_; }

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }
  LaurentSeries scale(Elt c) const;
  LaurentSeries scale(FieldElem c) const { return scale(c.raw()); }
  LaurentSeries shift(int k) const;  // times u^k
  // Keep only terms below u^abs and cap the precision there.
  LaurentSeries truncate(int abs_prec) const;
  // Part with exponents < bound, as an exact Laurent polynomial.
  LaurentSeries head(int bound) const;

  // Multiplicative inverse with `prec` relative terms when this is exact.
  LaurentSeries inv(int prec = kDefaultPrecision) const;

  LaurentSeries zero_like() const { return zero(*f_); }
  LaurentSeries one_like() const { return one(*f_); }

  // Agreement on all commonly known digits.
  bool agrees_with(const LaurentSeries& o) const;
  // Structural equality (same digits and same precision).
  bool operator==(const LaurentSeries& o) const;

  std::string to_string() const;

 private:
  void normalize();
  const Field* f_ = nullptr;
  int val_ = 0;
  std::vector<Elt> c_;
  int abs_ = kExact;
};

LaurentSeries embed(const RatFunc& r, int prec = kDefaultPrecision);
inline int ord_inf(const LaurentSeries& x) { return x.val(); }
// Odd q only; canonical branch (leading coefficient is the smallest root).
LaurentSeries sqrt(const LaurentSeries& x, int prec = kDefaultPrecision);

// 2x2 matrix over K, row-major.
struct Mat2K {
  std::array<LaurentSeries, 4> e;

  static Mat2K identity(const Field& f);
  static Mat2K diag(const LaurentSeries& a, const LaurentSeries& d);
  static Mat2K from(const LaurentSeries& a, const LaurentSeries& b, const LaurentSeries& c,
                    const LaurentSeries& d) {
    return Mat2K{{a, b, c, d}};
  }

  const LaurentSeries& at(int r, int c) const { return e[2 * r + c]; }
  LaurentSeries& at(int r, int c) { return e[2 * r + c]; }
  const Field& field() const { return e[0].field(); }

  Mat2K operator*(const Mat2K& o) const;
  Mat2K operator+(const Mat2K& o) const;
  Mat2K operator-(const Mat2K& o) const;
  Mat2K scale(const LaurentSeries& s) const;
  LaurentSeries det() const;
  // [[d, -b], [-c, a]]
  Mat2K adjugate() const;
  Mat2K inverse(int prec = kDefaultPrecision) const;
  Mat2K transpose() const;
  // Minimum valuation over the entries (nonzero-to-precision entries only).
  int min_ord() const;
  Mat2K pow(int n) const;
  bool agrees_with(const Mat2K& o) const;
  std::string to_string() const;
};

}  // namespace btq
