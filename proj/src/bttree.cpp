#include "btq/bttree.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "btq/errors.hpp"

namespace btq {

TreeVertex TreeVertex::make(int n, const LaurentSeries& c) {
  TreeVertex v;
  v.n = n;
  const LaurentSeries r = c.head(n);
  if (!r.is_zero()) {
    v.lo = r.val();
    v.coeffs = r.coeffs();
  }
  return v;
}

LaurentSeries TreeVertex::translation(const Field& f) const {
  if (coeffs.empty()) return LaurentSeries::zero(f);
  return LaurentSeries::exact(f, lo, coeffs);
}

Mat2K TreeVertex::matrix(const Field& f) const {
  return Mat2K::from(LaurentSeries::monomial(f, 1, n), translation(f), LaurentSeries::zero(f),
                     LaurentSeries::one(f));
}

bool TreeVertex::operator<(const TreeVertex& o) const {
  if (n != o.n) return n < o.n;
  if (lo != o.lo) return lo < o.lo;
  return coeffs < o.coeffs;
}

std::string TreeVertex::to_string(const Field& f) const {
  return "(" + std::to_string(n) + "; " + translation(f).to_string() + ")";
}

std::size_t TreeVertexHash::operator()(const TreeVertex& v) const {
  std::size_t h = std::hash<int>()(v.n) * 1000003u ^ std::hash<int>()(v.lo);
  for (Elt c : v.coeffs) h = h * 131u + c;
  return h;
}

TreeVertex canonical_form(const Mat2K& g) {
  const LaurentSeries& g0 = g.at(1, 0);
  const LaurentSeries& g1 = g.at(1, 1);
  if (g0.is_zero() && g1.is_zero()) throw PrecisionLoss("bottom row vanishes to working precision");
  // Pivot: least valuation; a zero-to-precision entry loses only if its
  // precision already certifies that.
  int p;
  if (g1.is_zero()) {
    p = 0;
  } else if (g0.is_zero()) {
    p = 1;
  } else {
    p = g1.val() < g0.val() ? 1 : 0;
  }
  const LaurentSeries& other = p == 0 ? g1 : g0;
  const LaurentSeries& piv = p == 0 ? g0 : g1;
  if (other.is_zero() && other.abs_prec() < piv.val())
    throw PrecisionLoss("cannot order bottom-row valuations at working precision");
  const LaurentSeries det = g.det();
  if (det.is_zero()) throw PrecisionLoss("matrix is singular to working precision");
  const int n = det.val() - 2 * piv.val();
  const LaurentSeries& top = g.at(0, p);
  // Digits of top/piv are needed up to u^n.
  const int need = top.is_zero() ? 0 : n - (top.val() - piv.val());
  const LaurentSeries c = top * piv.inv(std::max(kDefaultPrecision, need + kMinCorrectTerms));
  return TreeVertex::make(n, c);
}

std::vector<TreeVertex> neighbors(const Field& f, const TreeVertex& v) {
  std::vector<TreeVertex> out;
  out.reserve(f.q() + 1);
  const LaurentSeries c = v.translation(f);
  out.push_back(TreeVertex::make(v.n - 1, c));
  for (int t = 0; t < f.q(); ++t)
    out.push_back(TreeVertex::make(v.n + 1, c + LaurentSeries::monomial(f, static_cast<Elt>(t), v.n)));
  return out;
}

TreeVertex act(const Mat2K& g, const TreeVertex& v) { return canonical_form(g * v.matrix(g.field())); }

int distance(const Field& f, const TreeVertex& v, const TreeVertex& w) {
  // B_v^{-1} = [[u^{-n}, -c u^{-n}], [0, 1]] is exact.
  const LaurentSeries un = LaurentSeries::monomial(f, 1, -v.n);
  const Mat2K inv = Mat2K::from(un, -(v.translation(f) * un), LaurentSeries::zero(f), LaurentSeries::one(f));
  const Mat2K m = inv * w.matrix(f);
  return m.det().val() - 2 * m.min_ord();
}

std::vector<TreeVertex> ball(const Field& f, const TreeVertex& v, int radius) {
  std::vector<TreeVertex> out{v};
  std::unordered_set<TreeVertex, TreeVertexHash> seen{v};
  std::size_t level_start = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t level_end = out.size();
    for (std::size_t k = level_start; k < level_end; ++k)
      for (auto& w : neighbors(f, out[k]))
        if (seen.insert(w).second) out.push_back(w);
    level_start = level_end;
  }
  return out;
}

}  // namespace btq
