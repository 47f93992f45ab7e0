#pragma once

// Graph-side invariants of a quotient graph and their comparison with the
// closed formulas.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "btq/formulas.hpp"
#include "btq/quotient.hpp"

namespace btq {

// First Betti number E - V + 1 of a connected graph (InvalidArgument otherwise).
long long graph_h1(const QuotientGraph& g);

// True iff some vertex has degree < q + 1.
bool smooth_point_criterion(const QuotientGraph& g);

// Amalgam presentation of the unit group when the quotient is a tree.
// Generators g1, g2, ... follow the BFS order of terminal vertices.
struct Presentation {
  bool is_tree = false;
  std::vector<std::string> generators;
  std::vector<std::string> relations;  // sorted
  long long free_rank = 0;             // h1 when the graph is not a tree
  // "<g1, g2 | g1^4 = g2^4, g1^8 = 1, g2^8 = 1>" or
  // "NotATree: free quotient of rank 3".
  std::string to_string() const;
};
Presentation presentation(const QuotientGraph& g);

// Invariant factors d1 | d2 | ... (ones and zeros included).
std::vector<std::int64_t> smith_normal_form(const std::vector<std::vector<std::int64_t>>& m);

// Invariant factors > 1 of the cokernel of the reduced Laplacian.
std::vector<std::int64_t> critical_group(const QuotientGraph& g);

struct GraphMeasure {
  long long v1 = 0, vq1 = 0, e = 0, h1 = 0;
  std::vector<int> degree_set;  // sorted, distinct
  bool smooth_point = false;
  bool no_loops = false;
  bool connected = false;
  std::vector<std::int64_t> critical_group;
};
GraphMeasure measure(const QuotientGraph& g);

struct Report {
  RamProfile profile;
  int wp = 0;
  long long genus = 0, v1 = 0, vq1 = 0, e = 0, eichler = 0;
  std::optional<GraphMeasure> graph;
  std::map<std::string, bool> checks;
  bool all_pass() const;
};

// Formula values and checks; with a graph, also the measured counterparts.
// Formula integrality failures are recorded as failed checks, not thrown.
Report make_report(const RamProfile& R, const QuotientGraph* g = nullptr);

}  // namespace btq
