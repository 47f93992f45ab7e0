#include <algorithm>
#include <set>

#include "doctest.h"
#include "btq/errors.hpp"
#include "btq/formulas.hpp"
#include "btq/gfpoly.hpp"
#include "btq/invariants.hpp"
#include "test_util.hpp"

using namespace btq;

namespace {

// Synthetic quotient: stabilizer orders per vertex and edges (from, to, mult).
QuotientGraph synth(int q, const std::vector<int>& stab, const std::vector<std::array<int, 3>>& es) {
  QuotientGraph g;
  g.q = q;
  for (int s : stab) g.vertices.push_back({TreeVertex::base(), s, 0});
  for (auto [a, b, m] : es) {
    g.edges.push_back({a, b, m, q - 1});
    g.vertices[a].degree += m;
    g.vertices[b].degree += m;
  }
  return g;
}

QuotientGraph edge_graph(int q) { return synth(q, {q * q - 1, q * q - 1}, {{0, 1, 1}}); }
QuotientGraph banana(int q) { return synth(q, {q - 1, q - 1}, {{0, 1, q + 1}}); }
QuotientGraph star4() {
  // Two centers (0, 1), four leaves on each.
  std::vector<int> stab{3, 3};
  std::vector<std::array<int, 3>> es{{0, 1, 1}};
  for (int k = 0; k < 8; ++k) {
    stab.push_back(15);
    es.push_back({k < 4 ? 0 : 1, 2 + k, 1});
  }
  return synth(4, stab, es);
}

}  // namespace

TEST_CASE("wp and genus examples") {
  CHECK(wp(RamProfile(3, {1, 1})) == 1);
  CHECK(wp(RamProfile(3, {1, 2})) == 0);
  CHECK(wp(RamProfile(3, {1, 1, 1, 1})) == 1);
  for (int q : {2, 3, 4, 5, 7, 8, 9}) CHECK(genus(RamProfile(q, {1, 1})) == 0);
  CHECK(genus(RamProfile(4, {1, 1, 1, 1})) == 0);
  for (int q : {3, 5, 7, 9}) CHECK(genus(RamProfile(q, {1, 2})) == q);
  const RamProfile e3(3, {1, 1});
  CHECK(v1(e3) == 2);
  CHECK(vq1(e3) == 0);
  CHECK(edges(e3) == 1);
  const RamProfile s4(4, {1, 1, 1, 1});
  CHECK(v1(s4) == 8);
  CHECK(vq1(s4) == 2);
  CHECK(edges(s4) == 9);  // a tree on V1 + V_{q+1} = 10 vertices
  const RamProfile b3(3, {1, 2});
  CHECK(v1(b3) == 0);
  CHECK(vq1(b3) == 2);
  CHECK(edges(b3) == 4);
  CHECK(eichler_count(e3) == 4);
  CHECK(eichler_count(b3) == 0);
  CHECK(eichler_count(s4) == 16);
  CHECK_THROWS_AS(RamProfile(6, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(RamProfile(3, {1}), InvalidArgument);
  CHECK_THROWS_AS(RamProfile(3, {1, 0}), InvalidArgument);
}

TEST_CASE("formula sweep") {
  int swept = 0;
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    for (const auto& R : enumerate_profiles(q, {2, 4}, 4)) {
      CAPTURE(R.to_string());
      ++swept;
      long long g = 0;
      REQUIRE_NOTHROW(g = genus(R));
      REQUIRE_NOTHROW(edges(R));
      CHECK(vq1(R) >= 0);
      CHECK(euler_check(R));
      CHECK(eichler_count(R) == 2 * v1(R));
      const bool listed = R.degrees == std::vector<int>{1, 1} || (q == 4 && R.degrees == std::vector<int>{1, 1, 1, 1});
      CHECK((g == 0) == listed);
    }
  }
  CHECK(swept > 250);
}

TEST_CASE("realizability") {
  CHECK_FALSE(realizable(RamProfile(2, {1, 1, 1, 1})));
  CHECK_FALSE(realizable(RamProfile(3, {1, 1, 1, 1})));
  CHECK(realizable(RamProfile(4, {1, 1, 1, 1})));
  CHECK_FALSE(realizable(RamProfile(2, {2, 2})));
  CHECK(realizable(RamProfile(2, {3, 3})));
  // Unrealizable profiles can leave the admissible range.
  CHECK(genus(RamProfile(3, {1, 1, 1, 1})) < 0);
}

TEST_CASE("graph_h1 and smooth_point_criterion") {
  CHECK(graph_h1(edge_graph(3)) == 0);
  CHECK(graph_h1(banana(3)) == 3);
  CHECK(graph_h1(star4()) == 0);
  CHECK(smooth_point_criterion(edge_graph(3)));
  CHECK_FALSE(smooth_point_criterion(banana(3)));
  CHECK(smooth_point_criterion(star4()));
  auto two = synth(3, {8, 8}, {});
  CHECK_THROWS_AS(graph_h1(two), InvalidArgument);
}

TEST_CASE("smith_normal_form") {
  using M = std::vector<std::vector<std::int64_t>>;
  CHECK(smith_normal_form(M{{1, 0}, {0, 1}}) == std::vector<std::int64_t>{1, 1});
  CHECK(smith_normal_form(M{{2, 0}, {0, 4}}) == std::vector<std::int64_t>{2, 4});
  CHECK(smith_normal_form(M{{2, 1}, {1, 2}}) == std::vector<std::int64_t>{1, 3});
  CHECK(smith_normal_form(M{{4, 0}, {0, 6}}) == std::vector<std::int64_t>{2, 12});
  CHECK(smith_normal_form(M{{0, 0}, {0, 0}}) == std::vector<std::int64_t>{0, 0});
  // Product of invariant factors equals |det| and d_k | d_{k+1}.
  btq::testing::Gen gen(5);
  for (int it = 0; it < 200; ++it) {
    M m(3, std::vector<std::int64_t>(3));
    for (auto& row : m)
      for (auto& x : row) x = gen.uniform(-6, 6);
    const std::int64_t det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    const auto d = smith_normal_form(m);
    REQUIRE(d.size() == 3);
    CHECK(d[0] * d[1] * d[2] == std::llabs(det));
    for (int k = 0; k < 2; ++k)
      if (d[k] != 0) CHECK(d[k + 1] % d[k] == 0);
      else CHECK(d[k + 1] == 0);
  }
}

TEST_CASE("critical_group") {
  CHECK(critical_group(edge_graph(3)).empty());
  for (int q : {3, 5, 7}) CHECK(critical_group(banana(q)) == std::vector<std::int64_t>{q + 1});
  const auto tri = synth(3, {2, 2, 2}, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  CHECK(critical_group(tri) == std::vector<std::int64_t>{3});
  CHECK(critical_group(star4()).empty());
  // K4: 16 spanning trees, group Z/4 x Z/4.
  const auto k4 = synth(3, {2, 2, 2, 2}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  CHECK(critical_group(k4) == std::vector<std::int64_t>{4, 4});
}

TEST_CASE("presentation") {
  const auto e = presentation(edge_graph(3));
  CHECK(e.is_tree);
  CHECK(e.generators == std::vector<std::string>{"g1", "g2"});
  CHECK(e.to_string() == "<g1, g2 | g1^4 = g2^4, g1^8 = 1, g2^8 = 1>");
  const auto s = presentation(star4());
  CHECK(s.generators.size() == 8);
  CHECK(s.relations.size() == 15);
  CHECK(std::count(s.relations.begin(), s.relations.end(), "g1^5 = g8^5") == 1);
  CHECK(std::count(s.relations.begin(), s.relations.end(), "g8^15 = 1") == 1);
  CHECK(std::is_sorted(s.relations.begin(), s.relations.end()));
  const auto b = presentation(banana(3));
  CHECK_FALSE(b.is_tree);
  CHECK(b.free_rank == 3);
  CHECK(b.to_string() == "NotATree: free quotient of rank 3");
}

TEST_CASE("report on synthetic graphs") {
  auto r = make_report(RamProfile(3, {1, 1}), nullptr);
  CHECK(r.all_pass());
  CHECK_FALSE(r.graph);
  const auto g = edge_graph(3);
  r = make_report(RamProfile(3, {1, 1}), &g);
  CHECK(r.all_pass());
  const auto s = star4();
  r = make_report(RamProfile(4, {1, 1, 1, 1}), &s);
  CHECK(r.all_pass());
  const auto b = banana(3);
  r = make_report(RamProfile(3, {1, 2}), &b);
  CHECK(r.all_pass());
  CHECK(r.graph->critical_group == std::vector<std::int64_t>{4});
  // Mismatch is reported, not thrown.
  r = make_report(RamProfile(3, {1, 1}), &b);
  CHECK_FALSE(r.all_pass());
  CHECK_FALSE(r.checks.at("graph_v1"));
}
