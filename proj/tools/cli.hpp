#pragma once

// Command-line driver. Exit codes: 0 success with all checks green, 2 check
// failure or bad input, 3 unsupported, 4 resource guard.

#include <ostream>
#include <string>
#include <vector>

#include "btq/invariants.hpp"
#include "btq/order.hpp"
#include "btq/quotient.hpp"
#include "json.hpp"

namespace btq::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Convenience for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json report_json(const Report& r);
nlohmann::ordered_json graph_json(const QuotientResult& res, const Field& f);
nlohmann::ordered_json log_entry_json(const HomLogEntry& e);
std::string graph_dot(const QuotientResult& res, const Field& f);

}  // namespace btq::cli
