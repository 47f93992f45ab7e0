#pragma once

// Quaternion algebras H(a, b) over F = F_q(T).
//
//   odd q:   i^2 = a,     j^2 = b, ij = -ji
//   even q:  i^2 + i = a, j^2 = b, ij = j(i+1)
//
// Elements are coordinate quadruples in the basis 1, i, j, ij. The
// arithmetic is templated over the coefficient domain (FieldElem, Poly,
// RatFunc, LaurentSeries); QuatArith<C> carries a and b coerced into C.

#include <string>
#include <utility>
#include <vector>

#include "btq/gfpoly.hpp"
#include "btq/laurent.hpp"

namespace btq {

template <class C>
struct Quat {
  C x, y, z, w;

  Quat operator+(const Quat& o) const { return {x + o.x, y + o.y, z + o.z, w + o.w}; }
  Quat operator-(const Quat& o) const { return {x - o.x, y - o.y, z - o.z, w - o.w}; }
  Quat operator-() const { return {-x, -y, -z, -w}; }
  Quat scale(const C& c) const { return {x * c, y * c, z * c, w * c}; }
  bool operator==(const Quat& o) const { return x == o.x && y == o.y && z == o.z && w == o.w; }
};

template <class C>
class QuatArith {
 public:
  QuatArith(C a, C b, bool odd) : a_(std::move(a)), b_(std::move(b)), ab_(a_ * b_), odd_(odd) {}

  const C& a() const { return a_; }
  const C& b() const { return b_; }
  bool odd() const { return odd_; }

  Quat<C> zero() const { return {a_.zero_like(), a_.zero_like(), a_.zero_like(), a_.zero_like()}; }
  Quat<C> scalar(const C& c) const { return {c, a_.zero_like(), a_.zero_like(), a_.zero_like()}; }
  Quat<C> one() const { return scalar(a_.one_like()); }
  Quat<C> i() const { return {a_.zero_like(), a_.one_like(), a_.zero_like(), a_.zero_like()}; }
  Quat<C> j() const { return {a_.zero_like(), a_.zero_like(), a_.one_like(), a_.zero_like()}; }
  Quat<C> ij() const { return {a_.zero_like(), a_.zero_like(), a_.zero_like(), a_.one_like()}; }

  Quat<C> mul(const Quat<C>& p, const Quat<C>& r) const {
    const C &x1 = p.x, &y1 = p.y, &z1 = p.z, &w1 = p.w;
    const C &x2 = r.x, &y2 = r.y, &z2 = r.z, &w2 = r.w;
    if (odd_) {
      return {x1 * x2 + a_ * (y1 * y2) + b_ * (z1 * z2) - ab_ * (w1 * w2),
              x1 * y2 + y1 * x2 - b_ * (z1 * w2) + b_ * (w1 * z2),
              x1 * z2 + z1 * x2 + a_ * (y1 * w2) - a_ * (w1 * y2),
              x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2};
    }
    return {x1 * x2 + a_ * (y1 * y2) + b_ * (z1 * z2) + b_ * (z1 * w2) + ab_ * (w1 * w2),
            x1 * y2 + y1 * x2 + y1 * y2 + b_ * (z1 * w2) + b_ * (w1 * z2),
            x1 * z2 + z1 * x2 + a_ * (y1 * w2) + z1 * y2 + a_ * (w1 * y2),
            x1 * w2 + y1 * z2 + y1 * w2 + z1 * y2 + w1 * x2};
  }

  Quat<C> conj(const Quat<C>& p) const {
    if (odd_) return {p.x, -p.y, -p.z, -p.w};
    return {p.x + p.y, p.y, p.z, p.w};
  }

  C trace(const Quat<C>& p) const { return odd_ ? p.x + p.x : p.y; }

  C norm(const Quat<C>& p) const {
    if (odd_) return p.x * p.x - a_ * (p.y * p.y) - b_ * (p.z * p.z) + ab_ * (p.w * p.w);
    return p.x * p.x + p.x * p.y + a_ * (p.y * p.y) +
           b_ * (p.z * p.z + p.z * p.w + a_ * (p.w * p.w));
  }

  // (trace, norm): the element satisfies X^2 - t X + n = 0.
  std::pair<C, C> charpoly(const Quat<C>& p) const { return {trace(p), norm(p)}; }

  Quat<C> pow(Quat<C> p, unsigned n) const {
    Quat<C> r = one();
    while (n) {
      if (n & 1) r = mul(r, p);
      n >>= 1;
      if (n) p = mul(p, p);
    }
    return r;
  }

 private:
  C a_, b_, ab_;
  bool odd_;
};

class QuatAlgebra {
 public:
  // Throws InvalidArgument if a or b is zero or the fields differ.
  QuatAlgebra(RatFunc a, RatFunc b);

  const Field& field() const { return a_.field(); }
  bool odd() const { return field().is_odd(); }
  const RatFunc& a() const { return a_; }
  const RatFunc& b() const { return b_; }
  // Both structure constants lie in A.
  bool is_polynomial() const { return a_.is_poly() && b_.is_poly(); }

  QuatArith<RatFunc> over_F() const { return {a_, b_, odd()}; }
  // Requires is_polynomial().
  QuatArith<Poly> over_A() const;
  QuatArith<LaurentSeries> over_K(int prec = kDefaultPrecision) const;

  std::string to_string() const;
  bool operator==(const QuatAlgebra& o) const { return a_ == o.a_ && b_ == o.b_; }

 private:
  RatFunc a_, b_;
};

template <class C>
std::string quat_to_string(const Quat<C>& p) {
  const std::string basis[4] = {"", "i", "j", "ij"};
  const C* c[4] = {&p.x, &p.y, &p.z, &p.w};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    if (c[k]->is_zero()) continue;
    std::string s = c[k]->to_string();
    if (k > 0) {
      if (s == "1") {
        s = basis[k];
      } else {
        if (s.find_first_of("+-") != std::string::npos) s = "(" + s + ")";
        s += "*" + basis[k];
      }
    }
    out += out.empty() ? s : "+" + s;
  }
  return out.empty() ? "0" : out;
}

struct RamSet {
  std::vector<Place> places;  // finite places, canonical order
  std::vector<int> degrees() const;
  std::string to_string() const;
  bool operator==(const RamSet& o) const { return places == o.places; }
};

// Local splitting of the algebra at v (infinity allowed).
bool is_split_at(const QuatAlgebra& alg, const Place& v);
// Finite ramified places; throws RamifiedAtInfinity when infinity ramifies.
RamSet ramified_set(const QuatAlgebra& alg);

struct AlgebraChoice {
  Poly a, b;
};
// Smallest pair (a, b) of polynomials, by max degree and then canonical
// order, whose algebra ramifies exactly at R, with ab squarefree, its prime
// divisors exactly R, and b of even degree with square leading coefficient.
// Odd q only.
AlgebraChoice find_algebra(const Field& f, const RamSet& R, int bound = 64);

// First set R of distinct finite places with the given degrees, in canonical
// order of place tuples, for which find_algebra succeeds.
struct ProfileChoice {
  RamSet ramification;
  AlgebraChoice algebra;
};
ProfileChoice find_algebra_for_degrees(const Field& f, std::vector<int> degrees, int bound = 64);

// Symbol of the constant field extension F_{q^2}F at the finite place v.
int artin_legendre(const Place& v);

}  // namespace btq
