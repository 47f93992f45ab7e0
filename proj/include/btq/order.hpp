#pragma once

// The standard order A<1, i, j, ij> of a quaternion algebra with polynomial
// structure constants, its discriminant, units and torsion units.

#include <optional>
#include <string>
#include <vector>

#include "btq/quat.hpp"

namespace btq {

using QuatA = Quat<Poly>;

class StandardOrder {
 public:
  explicit StandardOrder(QuatAlgebra alg);

  const QuatAlgebra& algebra() const { return alg_; }
  const QuatArith<Poly>& arith() const { return H_; }
  const Field& field() const { return alg_.field(); }
  bool odd() const { return alg_.odd(); }

  // Set by certify_maximal.
  std::optional<bool> maximal;

 private:
  QuatAlgebra alg_;
  QuatArith<Poly> H_;
};

// det(Tr(x_k x_l)) for the basis 1, i, j, ij.
Poly gram_disc(const StandardOrder& ord);
// True iff gram_disc = c * (prod of ramified primes)^2 with c in F_q^x.
// Records the verdict in ord.maximal.
bool certify_maximal(StandardOrder& ord);

bool is_unit(const StandardOrder& ord, const QuatA& x);

// Multiplicative order of an element of finite order (charpoly over F_q);
// 0 if the charpoly is not constant or no order up to q^2 - 1 is found.
int element_order(const StandardOrder& ord, const QuatA& x);

struct TorsionUnit {
  QuatA element;
  FieldElem trace, norm;
  int order = 0;
  std::string to_string() const { return quat_to_string(element); }
};

// Lexicographic on (w, z, y, x) in canonical polynomial order.
bool torsion_less(const QuatA& l, const QuatA& r);

// Solutions of charpoly = f(X) (odd: X^2 - xi, even: X^2 + X + xi) for the
// algebra H(xi, r), with all coefficient degrees <= B.
std::vector<TorsionUnit> solve_torsion(const StandardOrder& ord, int B);

struct ConjResult {
  std::optional<QuatA> witness;  // gamma in the order with gamma x = y gamma
  int bound = 0;                 // coefficient degree bound searched
  int kernel_dim = 0;            // F_q-dimension of the linear solution space
};

// Searches for gamma with unit norm and coefficient degrees <= B such that
// gamma x = y gamma. An empty witness means none exists up to B.
ConjResult conj_search(const StandardOrder& ord, const QuatA& x, const QuatA& y, int B,
                       long long max_candidates = 20'000'000);

struct TorsionClass {
  std::vector<TorsionUnit> members;  // first member is the representative
};

struct TorsionCensus {
  std::vector<TorsionClass> classes;
  int conj_bound = 0;       // bound at which the final clustering was made
  long long expected = 0;   // 2^{#R} * wp(R), with the class number 1
};

// Clusters solve_torsion(ord, B) into Gamma-conjugacy buckets. Starts with
// conjugacy bound deg r + 2 and doubles it while the bucket count exceeds the
// expected count, up to max_conj_bound.
TorsionCensus torsion_classes(const StandardOrder& ord, int B, int max_conj_bound = 16);

// Conjugacy classes of the torsion element subgroups: 2^{#R} * wp(R) for the
// ramification degrees R, using h = 1 for A = F_q[T].
long long eichler_expected(const std::vector<int>& ram_degrees);

}  // namespace btq
