// Acceptance suite: one PASS/FAIL line per criterion, with timing.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "btq/bttree.hpp"
#include "btq/errors.hpp"
#include "btq/formulas.hpp"
#include "btq/invariants.hpp"
#include "btq/order.hpp"
#include "btq/quotient.hpp"
#include "test_util.hpp"

using namespace btq;
using btq::testing::Gen;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later ones are counted.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Verdict verdict(const std::string& ok_detail) const {
    if (failures_ == 0) return {true, ok_detail};
    return {false, first_ + (failures_ > 1 ? " (+" + std::to_string(failures_ - 1) + " more)" : "")};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

QuatAlgebra xi_alg(const Field& F, const Poly& r) {
  return QuatAlgebra(RatFunc(Poly::constant(F, F.xi())), RatFunc(r));
}

Poly t_times_t_minus_1(const Field& F) {
  const Poly T = Poly::T(F);
  return T * (T - T.one_like());
}

QuatA theta2_q3(const Field& F) {
  return {Poly(F), Poly::from_ints(F, {-1, 2}), Poly(F), Poly::constant(F, 2)};
}

// Quotients shared between criteria 2, 3 and 7.
struct Computed {
  RamProfile profile;
  QuotientGraph graph;
};
std::vector<Computed> g_quotients;

Verdict formula_suite() {
  Checker c;
  int swept = 0, zeros = 0;
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    for (const auto& R : enumerate_profiles(q, {2, 4}, 4)) {
      ++swept;
      try {
        const long long g = genus(R);
        c.expect(vq1(R) >= 0, R.to_string() + ": V_{q+1} < 0");
        edges(R);
        c.expect(euler_check(R), R.to_string() + ": Euler identity fails");
        const bool listed =
            R.degrees == std::vector<int>{1, 1} || (q == 4 && R.degrees == std::vector<int>{1, 1, 1, 1});
        c.expect((g == 0) == listed, R.to_string() + ": g = 0 outside the listed cases");
        zeros += g == 0;
      } catch (const NonIntegral& e) {
        c.expect(false, e.what());
      }
    }
  }
  return c.verdict(std::to_string(swept) + " profiles, g = 0 in " + std::to_string(zeros));
}

Verdict edge_quotients() {
  Checker c;
  std::ostringstream d;
  for (int q : {3, 5, 7}) {
    const Field& F = Field::from_q(q);
    const auto res = build_quotient(xi_alg(F, t_times_t_minus_1(F)));
    const auto& g = res.graph;
    const std::string tag = "q=" + std::to_string(q) + ": ";
    c.expect(g.vertices.size() == 2, tag + "vertex count " + std::to_string(g.vertices.size()));
    c.expect(g.edge_count() == 1, tag + "edge count " + std::to_string(g.edge_count()));
    for (const auto& v : g.vertices)
      c.expect(v.stabilizer_order == q * q - 1, tag + "stabilizer order " + std::to_string(v.stabilizer_order));
    for (const auto& e : g.edges)
      c.expect(e.stabilizer_order == q - 1, tag + "edge stabilizer " + std::to_string(e.stabilizer_order));
    g_quotients.push_back({RamProfile(q, res.ramification.degrees()), g});
    d << (q == 3 ? "" : "; ") << tag << "2 vertices (" << q * q - 1 << ", " << q * q - 1 << "), 1 edge ("
      << q - 1 << ")";
  }
  return c.verdict(d.str());
}

Verdict hyperelliptic_quotient() {
  Checker c;
  const Field& F = make_field(3, 1);
  const auto pc = find_algebra_for_degrees(F, {1, 2});
  const auto res = build_quotient(QuatAlgebra(RatFunc(pc.algebra.a), RatFunc(pc.algebra.b)));
  const auto& g = res.graph;
  const RamProfile R(3, res.ramification.degrees());
  c.expect(g.vertices.size() == 2, "vertex count " + std::to_string(g.vertices.size()));
  c.expect(g.edge_count() == 4, "edge count " + std::to_string(g.edge_count()));
  c.expect(g.edges.size() == 1, "edges are not all parallel");
  c.expect(!g.has_loops(), "loop present");
  c.expect(graph_h1(g) == 3 && genus(R) == 3, "h1 " + std::to_string(graph_h1(g)));
  for (const auto& v : g.vertices) {
    c.expect(v.stabilizer_order == 2, "stabilizer order " + std::to_string(v.stabilizer_order));
    c.expect(v.degree == 4, "vertex degree " + std::to_string(v.degree));
  }
  c.expect(critical_group(g) == std::vector<std::int64_t>{4}, "critical group is not Z/4");
  g_quotients.push_back({R, g});
  return c.verdict("H(" + pc.algebra.a.to_string() + ", " + pc.algebra.b.to_string() +
                   "): 2 vertices, 4 parallel edges, h1 = 3, critical group Z/4");
}

Verdict torsion_census() {
  Checker c;
  const Field& F = make_field(3, 1);
  const QuatAlgebra alg = xi_alg(F, t_times_t_minus_1(F));
  StandardOrder ord(alg);
  const auto units = solve_torsion(ord, 2);
  auto has = [&](const QuatA& x) {
    return std::any_of(units.begin(), units.end(), [&](const TorsionUnit& u) { return u.element == x; });
  };
  c.expect(has(ord.arith().i()), "theta_1 = i missing");
  c.expect(has(theta2_q3(F)), "theta_2 = (2T-1)i + 2ij missing");
  const auto census = torsion_classes(ord, 2);
  c.expect(census.classes.size() == 4, "class count " + std::to_string(census.classes.size()));
  SplitEmbedding emb(alg);
  const auto g = build_quotient(alg).graph;
  std::vector<int> hits(g.vertices.size());
  for (const auto& cls : census.classes) {
    const int k = locate(emb, g, fixed_vertex(emb, cls.members.front().element));
    c.expect(k >= 0, "class representative fixes no quotient vertex");
    if (k >= 0) ++hits[k];
  }
  for (std::size_t k = 0; k < hits.size(); ++k)
    c.expect(hits[k] == 2 && g.vertices[k].stabilizer_order == 8, "pairing is not 2-to-1 onto terminals");
  return c.verdict(std::to_string(units.size()) + " units, 4 classes, 2 per terminal vertex");
}

Verdict generator_orders() {
  Checker c;
  const Field& F = make_field(3, 1);
  const QuatAlgebra alg = xi_alg(F, t_times_t_minus_1(F));
  SplitEmbedding emb(alg);
  const auto H = alg.over_A();
  const Mat2K minus_one = Mat2K::identity(F).scale(LaurentSeries::constant(FieldElem(F, F.neg(1))));
  for (const QuatA& t : {H.i(), theta2_q3(F)}) {
    const Mat2K m = emb(H.one() - t);
    int order = 0;
    Mat2K p = m;
    for (int k = 1; k <= 16; ++k, p = p * m)
      if (p.agrees_with(Mat2K::identity(F))) {
        order = k;
        break;
      }
    c.expect(order == 8, "order " + std::to_string(order) + " for 1 - " + quat_to_string(t));
    c.expect(m.pow(4).agrees_with(minus_one), "fourth power is not -1");
  }
  return c.verdict("both of order 8 with fourth power -1 at precision " + std::to_string(emb.precision()));
}

LaurentSeries rand_laurent(Gen& g, const Field& F, int lo, int hi) {
  std::vector<Elt> c(hi - lo + 1);
  for (auto& x : c) x = g.elt(F);
  return LaurentSeries::exact(F, lo, c);
}

Verdict tree_properties() {
  Checker c;
  const Field& F = make_field(3, 1);
  Gen g(2024);
  const LaurentSeries one = LaurentSeries::one(F), zero = LaurentSeries::zero(F);
  const auto pts = ball(F, TreeVertex::base(), 3);
  // Even displacement for ord det = 0.
  for (int it = 0; it < 1000; ++it) {
    Mat2K m = Mat2K::identity(F);
    for (int s = 0; s < 4; ++s) {
      switch (g.uniform(0, 2)) {
        case 0: m = m * Mat2K::from(one, rand_laurent(g, F, -2, 2), zero, one); break;
        case 1: m = m * Mat2K::from(one, zero, rand_laurent(g, F, -2, 2), one); break;
        default: {
          const int k = g.uniform(-2, 2);
          m = m * Mat2K::diag(LaurentSeries::monomial(F, g.nonzero(F), k), LaurentSeries::monomial(F, g.nonzero(F), -k));
        }
      }
    }
    const TreeVertex& v = pts[g.uniform(0, static_cast<int>(pts.size()) - 1)];
    c.expect(distance(F, v, act(m, v)) % 2 == 0, "odd displacement");
  }
  // Invariance under K^x GL_2(O).
  int inv_checked = 0;
  while (inv_checked < 1000) {
    const Mat2K m = Mat2K::from(rand_laurent(g, F, -3, 3), rand_laurent(g, F, -3, 3), rand_laurent(g, F, -3, 3),
                                rand_laurent(g, F, -3, 3));
    const LaurentSeries z = rand_laurent(g, F, -2, 2);
    if (m.det().is_zero() || z.is_zero()) continue;
    Mat2K k;
    do {
      k = Mat2K::from(rand_laurent(g, F, 0, 3), rand_laurent(g, F, 0, 3), rand_laurent(g, F, 0, 3),
                      rand_laurent(g, F, 0, 3));
    } while (k.det().is_zero() || k.det().val() != 0);
    c.expect(canonical_form(m.scale(z) * k) == canonical_form(m), "canonical_form not invariant");
    ++inv_checked;
  }
  // Invariant-factor distance against BFS distance on the radius-4 ball.
  const auto b4 = ball(F, TreeVertex::base(), 4);
  std::unordered_map<TreeVertex, int, TreeVertexHash> index;
  for (std::size_t k = 0; k < b4.size(); ++k) index[b4[k]] = static_cast<int>(k);
  long long pairs = 0;
  for (std::size_t s = 0; s < b4.size(); ++s) {
    std::vector<int> dist(b4.size(), -1);
    std::vector<int> queue{static_cast<int>(s)};
    dist[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto& w : neighbors(F, b4[queue[h]])) {
        auto it = index.find(w);
        if (it == index.end() || dist[it->second] >= 0) continue;
        dist[it->second] = dist[queue[h]] + 1;
        queue.push_back(it->second);
      }
    for (std::size_t t = 0; t < b4.size(); ++t, ++pairs)
      c.expect(distance(F, b4[s], b4[t]) == dist[t], "distance mismatch");
  }
  return c.verdict("1000 displacements, 1000 invariance instances, " + std::to_string(pairs) + " distance pairs");
}

Verdict rational_points() {
  Checker c;
  c.expect(g_quotients.size() == 4, "criteria 2-3 did not produce their quotients");
  for (const auto& [R, g] : g_quotients)
    c.expect(smooth_point_criterion(g) == (wp(R) == 1), R.to_string() + ": criterion disagrees with wp");
  return c.verdict(std::to_string(g_quotients.size()) + " quotients agree");
}

Verdict maximality() {
  Checker c;
  Gen g(88);
  int checked = 0;
  for (int q : {3, 5, 7, 9, 2, 4, 8}) {
    const Field& F = Field::from_q(q);
    for (int d = 1; d <= 6; ++d)
      for (int it = 0; it < 3; ++it) {
        Poly r = g.nonzero_poly(F, d);
        while (r.deg_or(-1) != d) r = g.nonzero_poly(F, d);
        StandardOrder o(xi_alg(F, r));
        const Elt xi = F.xi();
        const Poly expect = F.is_odd() ? (r * r).scale(F.neg(F.mul(F.from_int(16), F.mul(xi, xi)))) : r * r;
        c.expect(gram_disc(o) == expect, "gram_disc mismatch for q=" + std::to_string(q) + ", r=" + r.to_string());
        ++checked;
      }
  }
  std::vector<QuatAlgebra> algs;
  for (int q : {3, 5, 7}) algs.push_back(xi_alg(Field::from_q(q), t_times_t_minus_1(Field::from_q(q))));
  const auto pc = find_algebra_for_degrees(make_field(3, 1), {1, 2});
  algs.emplace_back(RatFunc(pc.algebra.a), RatFunc(pc.algebra.b));
  for (const auto& a : algs) {
    StandardOrder o(a);
    c.expect(certify_maximal(o), a.to_string() + " not certified maximal");
  }
  return c.verdict(std::to_string(checked) + " discriminants, " + std::to_string(algs.size()) +
                   " acceptance algebras certified");
}

Verdict even_torsion() {
  Checker c;
  const Field& F2 = make_field(2, 1);
  const Poly T = Poly::T(F2);
  const auto u2 = solve_torsion(StandardOrder(xi_alg(F2, T * (T + T.one_like()))), 1);
  const QuatA target{T, Poly::constant(F2, 1), Poly::constant(F2, 1), Poly(F2)};
  c.expect(std::any_of(u2.begin(), u2.end(), [&](const TorsionUnit& u) { return u.element == target; }),
           "T + i + j missing");
  const Field& F4 = make_field(2, 2);
  const Poly S = Poly::T(F4);
  const auto u4 = solve_torsion(StandardOrder(xi_alg(F4, S * S * S * S + S)), 2);
  const Elt xi = F4.xi();
  int family = 0;
  for (int cc = 0; cc < 4; ++cc)
    for (int dd = 0; dd < 4; ++dd) {
      if (!cc && !dd) continue;
      const Elt alpha = F4.add(F4.add(F4.mul(cc, cc), F4.mul(cc, dd)), F4.mul(xi, F4.mul(dd, dd)));
      const Elt s = *F4.sqrt(alpha);
      for (int m = 0; m < 2; ++m) {
        const QuatA x{Poly(F4, {static_cast<Elt>(m), F4.mul(s, s), s}), Poly::constant(F4, 1),
                      Poly::constant(F4, static_cast<Elt>(cc)), Poly::constant(F4, static_cast<Elt>(dd))};
        c.expect(std::any_of(u4.begin(), u4.end(), [&](const TorsionUnit& u) { return u.element == x; }),
                 "family member " + quat_to_string(x) + " missing");
        ++family;
      }
    }
  bool refused = false;
  try {
    build_quotient(xi_alg(F4, S * (S + S.one_like())));
  } catch (const Unsupported&) {
    refused = true;
  }
  c.expect(refused, "even-q quotient did not raise Unsupported");
  return c.verdict("T+i+j found; " + std::to_string(family) + " family members found; even-q quotient refused");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {1, "formula suite", formula_suite, 1},
      {2, "edge quotients q = 3, 5, 7", edge_quotients, 180},
      {3, "hyperelliptic quotient q = 3", hyperelliptic_quotient, 300},
      {4, "torsion census q = 3", torsion_census, 60},
      {5, "order-8 generators", generator_orders, 60},
      {6, "tree properties", tree_properties, 600},
      {7, "rational-point criterion", rational_points, 60},
      {8, "maximality certificates", maximality, 600},
      {9, "even-q torsion", even_torsion, 600},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = cr.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.pass && secs > cr.budget_s) v = {false, "over time budget of " + std::to_string(cr.budget_s) + " s"};
    failed += !v.pass;
    std::printf("[%s] %d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", cr.id, cr.name, v.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
