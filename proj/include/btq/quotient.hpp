#pragma once

// The splitting embedding D -> M_2(K), unit-group computations on lattices,
// and the BFS construction of the quotient graph Gamma \ T.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "btq/bttree.hpp"
#include "btq/order.hpp"

namespace btq {

// i -> [[0, 1], [a, 0]], j -> diag(s, -s) with s the canonical sqrt(b).
class SplitEmbedding {
 public:
  // Odd q only; a, b polynomials, b of even degree with square leading
  // coefficient. Throws Unsupported / NotASquare otherwise.
  SplitEmbedding(const QuatAlgebra& alg, int prec = kDefaultPrecision);

  const QuatAlgebra& algebra() const { return alg_; }
  const Field& field() const { return alg_.field(); }
  int precision() const { return prec_; }
  const LaurentSeries& sqrt_b() const { return s_; }
  const LaurentSeries& a() const { return a_; }
  // Images of 1, i, j, ij.
  const std::array<Mat2K, 4>& basis_images() const { return img_; }

  Mat2K operator()(const QuatA& x) const;
  Mat2K apply(const Quat<LaurentSeries>& x) const;
  // Inverse transfer: coordinates of m in the basis 1, i, j, ij.
  Quat<LaurentSeries> coordinates(const Mat2K& m) const;

  // Lower bounds on ord_inf of the coordinates of ι^{-1}(m) for a matrix m
  // whose entries all have ord >= mu: x, y, z, w.
  std::array<int, 4> coordinate_ord_bounds(int mu) const;

 private:
  QuatAlgebra alg_;
  int prec_;
  LaurentSeries a_, s_;
  std::array<Mat2K, 4> img_;
};

struct HomLogEntry {
  std::string op;       // "hom_units"
  std::string u, v;     // vertex labels (or "matrix")
  int m = 0;            // homothety exponent
  int bound = 0;        // coefficient degree bound used
  int precision = 0;    // embedding precision
  int kernel_dim = 0;   // F_q-dimension of the solution space
  std::string outcome;  // "found", "none", "parity"
  std::string note;     // how the bound was derived
};

using RunLog = std::vector<HomLogEntry>;

struct HomResult {
  std::vector<QuatA> elements;  // all nonzero solutions, in enumeration order
  int bound = 0;
  int kernel_dim = 0;
};

// All λ in Λ with coefficient degrees <= B and ι(λ) L_U = u^m L_V, where
// 2m = ord det U - ord det V. Empty if that difference is odd.
HomResult hom_units(const SplitEmbedding& emb, const Mat2K& U, const Mat2K& V, int B);

// Completeness bound for hom_units(U, V): coefficient degrees of any
// solution are at most this (slack included).
int completeness_bound(const SplitEmbedding& emb, const Mat2K& U, const Mat2K& V);

struct StabilizerGroup {
  std::vector<QuatA> elements;
  int order() const { return static_cast<int>(elements.size()); }
};

StabilizerGroup stabilizer(const SplitEmbedding& emb, const TreeVertex& v, RunLog* log = nullptr);

// A unit γ with ι(γ) v = w, if one exists.
std::optional<QuatA> are_equivalent(const SplitEmbedding& emb, const TreeVertex& v, const TreeVertex& w,
                                    RunLog* log = nullptr);

struct QuotientVertex {
  TreeVertex lift;
  int stabilizer_order = 0;
  int degree = 0;  // with multiplicity
};

struct QuotientEdge {
  int from = 0, to = 0;   // from <= to
  int multiplicity = 0;
  int stabilizer_order = 0;  // order of the stabilizer of a lifted edge
};

struct QuotientGraph {
  int q = 0;
  std::vector<QuotientVertex> vertices;  // BFS discovery order
  std::vector<QuotientEdge> edges;       // sorted by (from, to)
  int edge_count() const;
  bool has_loops() const;
  bool is_connected() const;
  // Adjacency matrix with multiplicities.
  std::vector<std::vector<int>> adjacency() const;
};

struct QuotientOptions {
  int precision = kDefaultPrecision;
  std::optional<TreeVertex> start;  // default: the base vertex
  double safety_factor = 4.0;      // NonterminationGuard threshold multiplier
  long long expected_vertices = 0;  // V1 + V_{q+1}; 0 disables the guard
};

struct QuotientResult {
  QuotientGraph graph;
  RamSet ramification;
  AlgebraChoice algebra;
  RunLog log;
  int precision = 0;
};

// Requires odd q and a certified maximal standard order.
QuotientResult build_quotient(const QuatAlgebra& alg, const QuotientOptions& opts = {});

// Vertex fixed by a torsion element (greedy descent from the base vertex).
TreeVertex fixed_vertex(const SplitEmbedding& emb, const QuatA& x);

// Index of the quotient vertex whose lift is Γ-equivalent to v.
int locate(const SplitEmbedding& emb, const QuotientGraph& g, const TreeVertex& v);

// Runs f(emb) with the embedding at increasing precision until no
// PrecisionLoss escapes (64, 128, ..., kMaxPrecision).
template <class Fn>
auto with_precision(const QuatAlgebra& alg, int start, Fn&& f) -> decltype(f(std::declval<const SplitEmbedding&>()));

}  // namespace btq

#include "btq/quotient_impl.hpp"
