#include "btq/quotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "btq/errors.hpp"
#include "btq/formulas.hpp"
#include "btq/linalg.hpp"

namespace btq {

// ---------------------------------------------------------------- embedding

SplitEmbedding::SplitEmbedding(const QuatAlgebra& alg, int prec) : alg_(alg), prec_(prec) {
  const Field& F = alg.field();
  if (!F.is_odd())
    throw Unsupported(
        "even q: neither F(i) nor F(j) embeds into K, so there is no splitting map D -> M_2(K) of this shape; "
        "quotient construction for even q is not supported");
  if (!alg.is_polynomial()) throw InvalidArgument("the splitting embedding needs polynomial a and b");
  const Poly& b = alg.b().num();
  if (b.deg_or(0) % 2 != 0)
    throw NotASquare("b = " + b.to_string() + " has odd degree, so sqrt(b) is not in K; swap a and b or pick "
                     "another algebra");
  if (!F.is_square(b.lc()))
    throw NotASquare("leading coefficient of b = " + b.to_string() + " is not a square in F_q");
  a_ = LaurentSeries::from_poly(alg.a().num());
  s_ = sqrt(LaurentSeries::from_poly(b), prec);
  const LaurentSeries one = LaurentSeries::one(F), zero = LaurentSeries::zero(F);
  img_[0] = Mat2K::identity(F);
  img_[1] = Mat2K::from(zero, one, a_, zero);
  img_[2] = Mat2K::diag(s_, -s_);
  img_[3] = img_[1] * img_[2];
  const Mat2K& I = img_[1];
  const Mat2K& J = img_[2];
  const Mat2K B = Mat2K::identity(F).scale(LaurentSeries::from_poly(b));
  if (!(I * I).agrees_with(Mat2K::identity(F).scale(a_)) || !(J * J).agrees_with(B) ||
      !(I * J + J * I).agrees_with(Mat2K::diag(zero, zero)))
    throw Error("splitting embedding violates the defining relations");
}

Mat2K SplitEmbedding::apply(const Quat<LaurentSeries>& p) const {
  const LaurentSeries zs = p.z * s_, ws = p.w * s_;
  return Mat2K::from(p.x + zs, p.y - ws, a_ * (p.y + ws), p.x - zs);
}

Mat2K SplitEmbedding::operator()(const QuatA& x) const {
  return apply({LaurentSeries::from_poly(x.x), LaurentSeries::from_poly(x.y), LaurentSeries::from_poly(x.z),
                LaurentSeries::from_poly(x.w)});
}

Quat<LaurentSeries> SplitEmbedding::coordinates(const Mat2K& m) const {
  const Field& F = field();
  const Elt half = F.inv(F.from_int(2));
  const LaurentSeries inv_a = a_.inv(prec_);
  const LaurentSeries inv_2s = s_.scale(F.from_int(2)).inv(prec_);
  const LaurentSeries m21a = m.at(1, 0) * inv_a;
  return {(m.at(0, 0) + m.at(1, 1)).scale(half), (m.at(0, 1) + m21a).scale(half), (m.at(0, 0) - m.at(1, 1)) * inv_2s,
          (m21a - m.at(0, 1)) * inv_2s};
}

std::array<int, 4> SplitEmbedding::coordinate_ord_bounds(int mu) const {
  const int oa = a_.val(), os = s_.val();
  return {mu, std::min(mu, mu - oa), mu - os, std::min(mu - oa, mu) - os};
}

// ---------------------------------------------------------------- hom_units

namespace {

int ord_det(const Mat2K& m) {
  const LaurentSeries d = m.det();
  if (d.is_zero()) throw PrecisionLoss("determinant vanishes to working precision");
  return d.val();
}

std::string label(const Field& F, const TreeVertex& v) { return v.to_string(F); }

}  // namespace

int completeness_bound(const SplitEmbedding& emb, const Mat2K& U, const Mat2K& V) {
  const int dU = ord_det(U), dV = ord_det(V);
  if ((dU - dV) % 2 != 0) return 0;
  const int m = (dU - dV) / 2;
  // ι(λ) = u^m V M U^{-1} with M integral, so its entries have ord >= mu.
  const int mu = m + V.min_ord() + (U.min_ord() - dU);
  int b = 0;
  for (int L : emb.coordinate_ord_bounds(mu)) b = std::max(b, -L);
  return b + 2;
}

HomResult hom_units(const SplitEmbedding& emb, const Mat2K& U, const Mat2K& V, int B) {
  const Field& F = emb.field();
  HomResult res;
  res.bound = B;
  const int dU = ord_det(U), dV = ord_det(V);
  if ((dU - dV) % 2 != 0) return res;
  const int m = (dU - dV) / 2;
  const Mat2K Vinv = V.inverse(emb.precision());
  const LaurentSeries shift = LaurentSeries::monomial(F, 1, -m);
  std::array<Mat2K, 4> N;
  for (int k = 0; k < 4; ++k) N[k] = (Vinv * emb.basis_images()[k] * U).scale(shift);
  // Unknown (k, t) is the coefficient of T^t e_k; its matrix is u^{-t} N_k.
  const int n = 4 * (B + 1);
  int lo = 0;
  for (const auto& Nk : N)
    for (const auto& e : Nk.e)
      if (!e.is_zero()) lo = std::min(lo, e.val() - B);
  FqMatrix rows;
  for (int entry = 0; entry < 4; ++entry) {
    for (int ex = lo; ex < 0; ++ex) {
      std::vector<Elt> row(n, 0);
      bool nonzero = false;
      for (int k = 0; k < 4; ++k)
        for (int t = 0; t <= B; ++t) {
          const Elt c = N[k].e[entry].coeff(ex + t);
          row[k * (B + 1) + t] = c;
          nonzero |= c != 0;
        }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  const auto kernel = nullspace(F, std::move(rows), n);
  res.kernel_dim = static_cast<int>(kernel.size());
  if (kernel.size() > 2)
    throw StabilizerAnomalousOrder("hom_units solution space has dimension " + std::to_string(kernel.size()) +
                                   " > 2; the order is not maximal or the bound is wrong");
  long long total = 1;
  for (std::size_t d = 0; d < kernel.size(); ++d) total *= F.q();
  for (long long idx = 1; idx < total; ++idx) {
    std::vector<Elt> coef(n, 0);
    long long t = idx;
    for (const auto& v : kernel) {
      const Elt c = static_cast<Elt>(t % F.q());
      t /= F.q();
      for (int j = 0; j < n; ++j) coef[j] = F.add(coef[j], F.mul(c, v[j]));
    }
    std::array<std::vector<Elt>, 4> comp;
    for (int k = 0; k < 4; ++k) comp[k].assign(coef.begin() + k * (B + 1), coef.begin() + (k + 1) * (B + 1));
    QuatA x{Poly(F, comp[0]), Poly(F, comp[1]), Poly(F, comp[2]), Poly(F, comp[3])};
    const Poly nr = emb.algebra().over_A().norm(x);
    if (nr.deg_or(-1) != 0) throw Error("hom_units produced a non-unit " + quat_to_string(x));
    res.elements.push_back(std::move(x));
  }
  return res;
}

StabilizerGroup stabilizer(const SplitEmbedding& emb, const TreeVertex& v, RunLog* log) {
  const Field& F = emb.field();
  const Mat2K M = v.matrix(F);
  const int B = completeness_bound(emb, M, M);
  HomResult h = hom_units(emb, M, M, B);
  if (log)
    log->push_back({"stabilizer", label(F, v), label(F, v), 0, B, emb.precision(), h.kernel_dim,
                    h.elements.empty() ? "none" : "found", "valuation-profile bound + 2"});
  StabilizerGroup S{std::move(h.elements)};
  const int q = F.q();
  if (S.order() != q - 1 && S.order() != q * q - 1)
    throw StabilizerAnomalousOrder("stabilizer of " + label(F, v) + " has order " + std::to_string(S.order()));
  const auto H = emb.algebra().over_A();
  for (const auto& x : S.elements)
    for (const auto& y : S.elements)
      if (std::find(S.elements.begin(), S.elements.end(), H.mul(x, y)) == S.elements.end())
        throw StabilizerAnomalousOrder("stabilizer of " + label(F, v) + " is not closed under multiplication");
  return S;
}

std::optional<QuatA> are_equivalent(const SplitEmbedding& emb, const TreeVertex& v, const TreeVertex& w,
                                    RunLog* log) {
  const Field& F = emb.field();
  if ((v.n - w.n) % 2 != 0) {
    if (log) log->push_back({"are_equivalent", label(F, v), label(F, w), 0, 0, emb.precision(), 0, "parity", ""});
    return std::nullopt;
  }
  const Mat2K U = v.matrix(F), V = w.matrix(F);
  const int B = completeness_bound(emb, U, V);
  HomResult h = hom_units(emb, U, V, B);
  if (log)
    log->push_back({"are_equivalent", label(F, v), label(F, w), (v.n - w.n) / 2, B, emb.precision(), h.kernel_dim,
                    h.elements.empty() ? "none" : "found", "valuation-profile bound + 2"});
  if (h.elements.empty()) return std::nullopt;
  const QuatA& g = h.elements.front();
  if (!(act(emb(g), v) == w)) throw Error("equivalence witness does not map " + label(F, v) + " to " + label(F, w));
  return g;
}

// ---------------------------------------------------------------- graph

int QuotientGraph::edge_count() const {
  int e = 0;
  for (const auto& x : edges) e += x.multiplicity;
  return e;
}

bool QuotientGraph::has_loops() const {
  return std::any_of(edges.begin(), edges.end(), [](const QuotientEdge& e) { return e.from == e.to; });
}

std::vector<std::vector<int>> QuotientGraph::adjacency() const {
  std::vector<std::vector<int>> a(vertices.size(), std::vector<int>(vertices.size(), 0));
  for (const auto& e : edges) {
    a[e.from][e.to] += e.multiplicity;
    if (e.from != e.to) a[e.to][e.from] += e.multiplicity;
  }
  return a;
}

bool QuotientGraph::is_connected() const {
  if (vertices.empty()) return true;
  const auto a = adjacency();
  std::vector<char> seen(vertices.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (std::size_t y = 0; y < vertices.size(); ++y)
      if (a[x][y] && !seen[y]) seen[y] = 1, stack.push_back(static_cast<int>(y));
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

namespace {

struct OrbitRecord {
  int target;
  int stabilizer_order;
};

QuotientGraph run_bfs(const SplitEmbedding& emb, const QuotientOptions& opts, long long expected, RunLog& log) {
  const Field& F = emb.field();
  const int q = F.q();
  QuotientGraph g;
  g.q = q;
  std::vector<StabilizerGroup> stabs;
  std::vector<std::vector<OrbitRecord>> orbits;
  auto add_vertex = [&](const TreeVertex& lift) {
    stabs.push_back(stabilizer(emb, lift, &log));
    g.vertices.push_back({lift, stabs.back().order(), 0});
    orbits.emplace_back();
    if (expected > 0 && static_cast<double>(g.vertices.size()) > opts.safety_factor * static_cast<double>(expected) + 2)
      throw NonterminationGuard("quotient BFS found " + std::to_string(g.vertices.size()) +
                                " vertices, beyond the predicted " + std::to_string(expected));
  };
  add_vertex(opts.start.value_or(TreeVertex::base()));
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    const TreeVertex lift = g.vertices[k].lift;
    const auto nbrs = neighbors(F, lift);
    // Orbits of the stabilizer on the neighbours (union-find).
    std::vector<int> parent(nbrs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<Mat2K> mats;
    for (const auto& s : stabs[k].elements) mats.push_back(emb(s));
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (const auto& M : mats) {
        const TreeVertex img = act(M, nbrs[a]);
        const auto it = std::find(nbrs.begin(), nbrs.end(), img);
        if (it == nbrs.end()) throw Error("stabilizer element moves a neighbour off the star of " + lift.to_string(F));
        const int b = static_cast<int>(it - nbrs.begin());
        parent[find(static_cast<int>(a))] = find(b);
      }
    std::vector<int> reps;
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      if (find(static_cast<int>(a)) == static_cast<int>(a)) reps.push_back(static_cast<int>(a));
    std::sort(reps.begin(), reps.end());
    if (stabs[k].order() == q * q - 1 && reps.size() != 1)
      throw StabilizerAnomalousOrder("stabilizer of order q^2-1 is not transitive on the neighbours of " +
                                     lift.to_string(F));
    for (int r : reps) {
      const TreeVertex& x = nbrs[r];
      int fixing = 0;
      for (const auto& M : mats) fixing += act(M, x) == x;
      int target = -1;
      for (std::size_t j = 0; j < g.vertices.size() && target < 0; ++j)
        if (are_equivalent(emb, x, g.vertices[j].lift, &log)) target = static_cast<int>(j);
      if (target < 0) {
        target = static_cast<int>(g.vertices.size());
        add_vertex(x);
      }
      orbits[k].push_back({target, fixing});
    }
  }
  // Each quotient edge is seen once from each endpoint.
  std::map<std::pair<int, int>, std::pair<int, int>> seen;  // (lo, hi) -> (count from lo, count from hi)
  std::map<std::pair<int, int>, int> edge_stab;
  for (std::size_t k = 0; k < orbits.size(); ++k)
    for (const auto& o : orbits[k]) {
      const int a = static_cast<int>(k), b = o.target;
      const auto key = std::minmax(a, b);
      auto& c = seen[key];
      (a <= b ? c.first : c.second) += 1;
      auto [it, fresh] = edge_stab.emplace(key, o.stabilizer_order);
      if (!fresh && it->second != o.stabilizer_order) throw Error("edge stabilizer orders disagree");
    }
  for (const auto& [key, c] : seen) {
    const int mult = key.first == key.second ? c.first / 2 : c.first;
    if (key.first != key.second && c.first != c.second)
      throw Error("edge multiplicity differs between endpoints " + std::to_string(key.first) + " and " +
                  std::to_string(key.second));
    g.edges.push_back({key.first, key.second, mult, edge_stab[key]});
  }
  for (const auto& e : g.edges) {
    g.vertices[e.from].degree += e.multiplicity;
    g.vertices[e.to].degree += e.multiplicity;
  }
  return g;
}

}  // namespace

QuotientResult build_quotient(const QuatAlgebra& alg, const QuotientOptions& opts) {
  if (!alg.odd())
    throw Unsupported(
        "quotient construction needs odd q: for even q neither F(i) nor F(j) embeds into K, and the route through "
        "F_{q^2}K is not implemented");
  StandardOrder ord(alg);
  QuotientResult res;
  res.ramification = ramified_set(alg);
  if (!certify_maximal(ord)) throw Error("the standard order of " + alg.to_string() + " is not certified maximal");
  res.algebra = {alg.a().num(), alg.b().num()};
  long long expected = opts.expected_vertices;
  if (expected == 0 && !res.ramification.places.empty()) {
    const RamProfile R(alg.field().q(), res.ramification.degrees());
    expected = v1(R) + vq1(R);
  }
  res.graph = with_precision(alg, opts.precision, [&](const SplitEmbedding& emb) {
    res.log.clear();
    res.precision = emb.precision();
    return run_bfs(emb, opts, expected, res.log);
  });
  return res;
}

TreeVertex fixed_vertex(const SplitEmbedding& emb, const QuatA& x) {
  const Field& F = emb.field();
  const Mat2K g = emb(x);
  TreeVertex cur = TreeVertex::base();
  int d = distance(F, cur, act(g, cur));
  while (d > 0) {
    bool moved = false;
    for (const auto& nb : neighbors(F, cur)) {
      const int dn = distance(F, nb, act(g, nb));
      if (dn < d) {
        cur = nb;
        d = dn;
        moved = true;
        break;
      }
    }
    if (!moved) throw Error("element " + quat_to_string(x) + " has no fixed vertex (not elliptic)");
  }
  return cur;
}

int locate(const SplitEmbedding& emb, const QuotientGraph& g, const TreeVertex& v) {
  for (std::size_t j = 0; j < g.vertices.size(); ++j)
    if (are_equivalent(emb, v, g.vertices[j].lift)) return static_cast<int>(j);
  return -1;
}

}  // namespace btq
