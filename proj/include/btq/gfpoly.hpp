#pragma once

// Exact arithmetic in F_q (q = p^e), A = F_q[T], F = F_q(T), and places of F.
//
// Field elements are stored as an index into the canonical enumeration of
// F_q: the residue polynomial c_0 + c_1 z + ... + c_{e-1} z^{e-1} (z a root of
// the field modulus) has index sum c_k p^k. Comparing indices is the
// lexicographic order on (c_{e-1}, ..., c_0), and every "smallest" choice in
// the library refers to it.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace btq {

using Elt = std::uint8_t;

inline constexpr int kDefaultFieldBound = 64;
inline constexpr int kHardFieldBound = 128;

class Field {
 public:
  // Returns the interned field F_{p^e}. Fields live for the whole program so
  // elements may hold plain pointers to them.
  static const Field& make(int p, int e, int bound = kDefaultFieldBound);
  static const Field& from_q(int q, int bound = kDefaultFieldBound);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  bool is_odd() const { return p_ != 2; }
  // Monic modulus over F_p, low to high, size e+1 (for e=1 this is x).
  const std::vector<int>& modulus() const { return modulus_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt add(Elt a, Elt b) const { return add_[idx(a, b)]; }
  Elt sub(Elt a, Elt b) const { return add_[idx(a, neg_[b])]; }
  Elt mul(Elt a, Elt b) const { return mul_[idx(a, b)]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t n) const;
  // Image of an integer under Z -> F_p -> F_q.
  Elt from_int(long long n) const;
  std::vector<int> digits(Elt a) const;

  bool is_square(Elt a) const { return a == 0 || sqrt_[a] != kNone; }
  // Smallest square root in enumeration order.
  std::optional<Elt> sqrt(Elt a) const;
  // Tr_{F_q/F_p}(a) as an integer in [0, p).
  int abs_trace(Elt a) const { return trace_[a]; }
  // Multiplicative order of a nonzero element.
  int order(Elt a) const;

  // Odd q: smallest non-square. Even q: smallest element of absolute trace 1.
  Elt xi() const { return xi_; }

  std::string format(Elt a) const;

 private:
  Field(int p, int e, std::vector<int> modulus);
  std::size_t idx(Elt a, Elt b) const { return static_cast<std::size_t>(a) * q_ + b; }

  static constexpr Elt kNone = 0xFF;
  int p_, e_, q_;
  std::vector<int> modulus_;
  std::vector<Elt> add_, mul_, neg_, inv_, sqrt_;
  std::vector<int> trace_;
  Elt xi_ = 0;
};

// make_field and choose_xi under their operational names.
const Field& make_field(int p, int e);
class FieldElem;
FieldElem choose_xi(const Field& f);

class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const Field& f, Elt v) : f_(&f), v_(v) {}
  static FieldElem from_int(const Field& f, long long n) { return {f, f.from_int(n)}; }

  const Field& field() const { return *f_; }
  bool has_field() const { return f_ != nullptr; }
  Elt raw() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  FieldElem operator+(FieldElem o) const { return {*f_, f_->add(v_, o.v_)}; }
  FieldElem operator-(FieldElem o) const { return {*f_, f_->sub(v_, o.v_)}; }
  FieldElem operator*(FieldElem o) const { return {*f_, f_->mul(v_, o.v_)}; }
  FieldElem operator/(FieldElem o) const { return {*f_, f_->div(v_, o.v_)}; }
  FieldElem operator-() const { return {*f_, f_->neg(v_)}; }
  FieldElem& operator+=(FieldElem o) { return *this = *this + o; }
  FieldElem& operator-=(FieldElem o) { return *this = *this - o; }
  FieldElem& operator*=(FieldElem o) { return *this = *this * o; }
  FieldElem inv() const { return {*f_, f_->inv(v_)}; }
  FieldElem pow(std::uint64_t n) const { return {*f_, f_->pow(v_, n)}; }
  FieldElem zero_like() const { return {*f_, 0}; }
  FieldElem one_like() const { return {*f_, 1}; }

  bool operator==(const FieldElem& o) const { return v_ == o.v_; }
  auto operator<=>(const FieldElem& o) const { return v_ <=> o.v_; }

  std::string to_string() const { return f_->format(v_); }

 private:
  const Field* f_ = nullptr;
  Elt v_ = 0;
};

// Degree of a polynomial. The zero polynomial has the explicit marker
// NEG_INF, which absorbs addition and compares below every integer.
class Degree {
 public:
  constexpr Degree(int d) : v_(d) {}  // NOLINT(google-explicit-constructor)
  static constexpr Degree neg_inf() { return Degree(kNegInf, 0); }

  constexpr bool is_neg_inf() const { return v_ == kNegInf; }
  int value() const;

  constexpr Degree operator+(Degree o) const {
    return (is_neg_inf() || o.is_neg_inf()) ? neg_inf() : Degree(v_ + o.v_);
  }
  constexpr bool operator==(const Degree&) const = default;
  constexpr auto operator<=>(const Degree& o) const { return v_ <=> o.v_; }
  std::string to_string() const;

 private:
  static constexpr int kNegInf = std::numeric_limits<int>::min();
  constexpr Degree(int v, int) : v_(v) {}
  int v_;
};

// Element of A = F_q[T]; coefficients low to high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field& f) : f_(&f) {}
  Poly(const Field& f, std::vector<Elt> coeffs);
  static Poly constant(const Field& f, Elt c) { return Poly(f, {c}); }
  static Poly constant(FieldElem c) { return constant(c.field(), c.raw()); }
  static Poly T(const Field& f) { return Poly(f, {0, 1}); }
  static Poly monomial(const Field& f, Elt c, int k);
  static Poly from_ints(const Field& f, const std::vector<long long>& coeffs);

  const Field& field() const { return *f_; }
  bool has_field() const { return f_ != nullptr; }
  const std::vector<Elt>& coeffs() const { return c_; }
  Elt coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0; }
  FieldElem coeff_elem(int k) const { return {*f_, coeff(k)}; }
  Degree degree() const { return c_.empty() ? Degree::neg_inf() : Degree(static_cast<int>(c_.size()) - 1); }
  // Degree as an int; the zero polynomial maps to `zero_value`.
  int deg_or(int zero_value) const { return c_.empty() ? zero_value : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elt lc() const { return c_.empty() ? 0 : c_.back(); }
  FieldElem lc_elem() const { return {*f_, lc()}; }

  Poly zero_like() const { return Poly(*f_); }
  Poly one_like() const { return constant(*f_, 1); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(Elt c) const;
  Poly scale(FieldElem c) const { return scale(c.raw()); }
  Poly shift(int k) const;  // times T^k, k >= 0

  // Euclidean division; throws InvalidArgument on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  bool divides(const Poly& o) const { return (o % *this).is_zero(); }

  Poly monic() const;
  Poly derivative() const;
  Poly pow(std::uint64_t n) const;
  FieldElem eval(FieldElem x) const;
  Poly compose(const Poly& g) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  // Canonical order: by degree, then coefficients from the top down.
  std::strong_ordering operator<=>(const Poly& o) const;

  std::string to_string(const std::string& var = "T") const;

 private:
  void trim();
  const Field* f_ = nullptr;
  std::vector<Elt> c_;
};

Poly gcd(Poly a, Poly b);  // monic (or zero)
// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct XGcd {
  Poly g, s, t;
};
XGcd xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, unsigned __int128 n, const Poly& mod);
// Inverse of a modulo m; throws InvalidArgument if not coprime.
Poly invmod(const Poly& a, const Poly& m);

// Odd q: square root with canonical leading coefficient, if f is a square.
// Even q: square root exists iff f is in F_q[T^2].
std::optional<Poly> poly_sqrt(const Poly& f);
// Even q: all a in A with a^2 + a = g (zero or two solutions, a and a+1).
std::vector<Poly> artin_schreier_roots(const Poly& g);

struct Factor {
  Poly poly;  // monic irreducible
  int multiplicity;
  bool operator==(const Factor&) const = default;
};
struct Factorization {
  FieldElem unit;
  std::vector<Factor> factors;  // sorted in canonical polynomial order
  Poly expand() const;
};
Factorization factor(const Poly& f);
bool is_irreducible(const Poly& f);
bool is_squarefree(const Poly& f);
// Number of monic irreducible polynomials of degree d over F_q.
long long count_irreducible(int q, int d);
// All monic irreducible polynomials of degree d, in canonical order.
std::vector<Poly> monic_irreducibles(const Field& f, int d);

// Quadratic residue symbol of g modulo the irreducible f (odd q only):
// +1, -1, or 0 when f divides g.
int sqr_test_residue(const Poly& f, const Poly& g);

// Element of F = F_q(T): gcd(num, den) = 1, den monic.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Poly& num);
  RatFunc(const Poly& num, const Poly& den);

  const Field& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_one(); }
  bool is_constant() const { return is_poly() && num_.is_constant(); }
  // ord at infinity: deg(den) - deg(num).
  int ord_inf() const;

  RatFunc zero_like() const { return RatFunc(num_.zero_like()); }
  RatFunc one_like() const { return RatFunc(num_.one_like()); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc inv() const;

  bool operator==(const RatFunc& o) const = default;
  std::string to_string() const;

 private:
  Poly num_, den_;
};

// A place of F: infinity or a monic irreducible polynomial.
class Place {
 public:
  static Place infinity(const Field& f);
  static Place finite(const Poly& p);  // throws unless monic irreducible

  bool is_infinite() const { return infinite_; }
  const Poly& poly() const;  // finite places only
  const Field& field() const { return *f_; }
  int degree() const { return infinite_ ? 1 : poly_.deg_or(0); }
  // q_x = q^deg(x).
  long long norm() const;

  // Valuation of a nonzero polynomial / rational function at this place.
  int ord(const Poly& a) const;
  int ord(const RatFunc& a) const;

  bool operator==(const Place& o) const;
  // Finite places in canonical polynomial order, infinity last.
  std::strong_ordering operator<=>(const Place& o) const;
  std::string to_string() const;

 private:
  Place() = default;
  const Field* f_ = nullptr;
  bool infinite_ = false;
  Poly poly_;
};

// T |-> (x T + y) / (z T + w).
struct Mobius {
  FieldElem x, y, z, w;
  Mobius inverse() const;
  Mobius compose(const Mobius& inner) const;  // this(inner(T))
  bool fixes_infinity() const { return z.is_zero(); }
  bool is_identity() const;
  // Image of the point t in F_q (z t + w must be nonzero).
  FieldElem apply(FieldElem t) const;
};
// Substitution r(T) -> r((xT+y)/(zT+w)).
RatFunc substitute(const RatFunc& r, const Mobius& m);
// Push-forward r -> r o m^{-1}: a zero of r at t becomes a zero at m(t).
RatFunc pushforward(const RatFunc& r, const Mobius& m);
// The affine map fixing infinity and sending x1 -> 0, x2 -> 1.
Mobius mobius_two_points(const Place& x1, const Place& x2);

}  // namespace btq
