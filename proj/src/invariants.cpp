#include "btq/invariants.hpp"

#include <algorithm>
#include <set>

#include "btq/errors.hpp"
#include "btq/linalg.hpp"

namespace btq {

long long graph_h1(const QuotientGraph& g) {
  if (!g.is_connected()) throw InvalidArgument("graph_h1 needs a connected graph");
  return static_cast<long long>(g.edge_count()) - static_cast<long long>(g.vertices.size()) + 1;
}

bool smooth_point_criterion(const QuotientGraph& g) {
  return std::any_of(g.vertices.begin(), g.vertices.end(), [&](const QuotientVertex& v) { return v.degree < g.q + 1; });
}

std::string Presentation::to_string() const {
  if (!is_tree) return "NotATree: free quotient of rank " + std::to_string(free_rank);
  std::string s = "<";
  for (std::size_t k = 0; k < generators.size(); ++k) s += (k ? ", " : "") + generators[k];
  s += " |";
  for (std::size_t k = 0; k < relations.size(); ++k) s += (k ? ", " : " ") + relations[k];
  return s + ">";
}

Presentation presentation(const QuotientGraph& g) {
  Presentation p;
  p.free_rank = graph_h1(g);
  p.is_tree = p.free_rank == 0;
  if (!p.is_tree) return p;
  const long long q = g.q;
  for (const auto& v : g.vertices)
    if (v.stabilizer_order == q * q - 1) p.generators.push_back("g" + std::to_string(p.generators.size() + 1));
  // Vertex groups F_{q^2}^x, all edge groups the common F_q^x, which is
  // generated by the (q+1)-th power of each generator.
  for (const auto& x : p.generators) p.relations.push_back(x + "^" + std::to_string(q * q - 1) + " = 1");
  for (std::size_t k = 1; k < p.generators.size(); ++k)
    p.relations.push_back(p.generators[0] + "^" + std::to_string(q + 1) + " = " + p.generators[k] + "^" +
                          std::to_string(q + 1));
  std::sort(p.relations.begin(), p.relations.end());
  return p;
}

std::vector<std::int64_t> smith_normal_form(const std::vector<std::vector<std::int64_t>>& m) {
  return smith_invariants(m);
}

std::vector<std::int64_t> critical_group(const QuotientGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n < 2) return {};
  const auto adj = g.adjacency();
  std::vector<std::vector<std::int64_t>> lap(n - 1, std::vector<std::int64_t>(n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j)
      lap[i][j] = i == j ? g.vertices[i].degree - 2 * adj[i][i] : -adj[i][j];
  std::vector<std::int64_t> out;
  for (auto d : smith_invariants(lap))
    if (d != 1) out.push_back(d);
  return out;
}

GraphMeasure measure(const QuotientGraph& g) {
  GraphMeasure m;
  std::set<int> degs;
  for (const auto& v : g.vertices) {
    (v.degree < g.q + 1 ? m.v1 : m.vq1)++;
    degs.insert(v.degree);
  }
  m.degree_set.assign(degs.begin(), degs.end());
  m.e = g.edge_count();
  m.connected = g.is_connected();
  m.no_loops = !g.has_loops();
  m.h1 = m.connected ? graph_h1(g) : -1;
  m.smooth_point = smooth_point_criterion(g);
  if (m.connected) m.critical_group = critical_group(g);
  return m;
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

Report make_report(const RamProfile& R, const QuotientGraph* g) {
  Report r;
  r.profile = R;
  r.wp = wp(R);
  r.eichler = eichler_count(R);
  try {
    r.genus = genus(R);
    r.v1 = v1(R);
    r.vq1 = vq1(R);
    r.e = edges(R);
    r.checks["integral"] = true;
    r.checks["euler"] = euler_check(R);
    r.checks["vq1_nonnegative"] = r.vq1 >= 0;
  } catch (const NonIntegral&) {
    r.checks["integral"] = false;
  }
  r.checks["eichler_twice_v1"] = r.eichler == 2 * r.v1;
  if (g) {
    r.graph = measure(*g);
    const auto& m = *r.graph;
    r.checks["graph_v1"] = m.v1 == r.v1;
    r.checks["graph_vq1"] = m.vq1 == r.vq1;
    r.checks["graph_edges"] = m.e == r.e;
    r.checks["graph_h1_is_genus"] = m.h1 == r.genus;
    r.checks["graph_connected"] = m.connected;
    r.checks["graph_no_loops"] = m.no_loops;
    r.checks["graph_degrees"] = std::all_of(m.degree_set.begin(), m.degree_set.end(),
                                            [&](int d) { return d == 1 || d == R.q + 1; });
    r.checks["smooth_point_iff_wp"] = m.smooth_point == (r.wp == 1);
  }
  return r;
}

}  // namespace btq
