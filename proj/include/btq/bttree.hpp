#pragma once

// The Bruhat-Tits tree of PGL_2(K), K = F_q((u)), u = 1/T.
//
// A vertex is the homothety class of an O-lattice in K^2 (O = F_q[[u]]),
// acted on from the left: g . [L] = [g L]. Every class has a unique column
// basis [[u^n, c], [0, 1]] with c a finite Laurent polynomial in u whose
// exponents are all < n; the pair (n, c) is the canonical vertex.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "btq/laurent.hpp"

namespace btq {

struct TreeVertex {
  int n = 0;
  // c = sum_k coeffs[k] u^{lo+k}; coeffs empty (and lo = 0) for c = 0.
  int lo = 0;
  std::vector<Elt> coeffs;

  static TreeVertex base() { return {}; }
  // Build from an exact c, reducing it modulo u^n.
  static TreeVertex make(int n, const LaurentSeries& c);

  LaurentSeries translation(const Field& f) const;
  // Column basis [[u^n, c], [0, 1]] (exact).
  Mat2K matrix(const Field& f) const;

  bool operator==(const TreeVertex& o) const = default;
  bool operator<(const TreeVertex& o) const;
  std::string to_string(const Field& f) const;
};

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const;
};

// Vertex of the lattice spanned by the columns of g. Column reduction with
// the bottom-row entry of least valuation as pivot (ties: first column).
TreeVertex canonical_form(const Mat2K& g);

// Down-neighbour (n-1, c mod u^{n-1}) first, then (n+1, c + t u^n) for t in
// the enumeration order of F_q.
std::vector<TreeVertex> neighbors(const Field& f, const TreeVertex& v);

TreeVertex act(const Mat2K& g, const TreeVertex& v);

// ord det M - 2 min ord M for M = B_v^{-1} B_w (exact).
int distance(const Field& f, const TreeVertex& v, const TreeVertex& w);

// Vertices at distance <= radius from v, in BFS order.
std::vector<TreeVertex> ball(const Field& f, const TreeVertex& v, int radius);

}  // namespace btq
