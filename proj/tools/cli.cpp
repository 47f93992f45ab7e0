#include "cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "btq/errors.hpp"
#include "btq/formulas.hpp"
#include "btq/parallel.hpp"
#include "btq/parse.hpp"

namespace btq::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitCheckFailed = 2;

struct AlgebraInput {
  std::string field = "3";
  std::string algebra;
  std::string r;
  std::string r_degrees;
};

void add_algebra_options(CLI::App* cmd, AlgebraInput& in) {
  cmd->add_option("--q", in.field, "field: 9, q=9 or p=3,e=2")->capture_default_str();
  cmd->add_option("--algebra", in.algebra, "algebra spec, e.g. \"H(xi, T*(T-1))\"");
  cmd->add_option("--r", in.r, "shorthand for H(xi, r)");
  cmd->add_option("--R-degrees", in.r_degrees, "ramification degrees; the algebra is found automatically");
}

struct ResolvedAlgebra {
  const Field* field;
  QuatAlgebra alg;
};

ResolvedAlgebra resolve(const AlgebraInput& in) {
  const Field& F = parse_field(in.field);
  const int given = !in.algebra.empty() + !in.r.empty() + !in.r_degrees.empty();
  if (given != 1) throw InvalidArgument("give exactly one of --algebra, --r, --R-degrees");
  if (!in.algebra.empty()) return {&F, parse_algebra(F, in.algebra)};
  if (!in.r.empty()) return {&F, QuatAlgebra(RatFunc(Poly::constant(F, F.xi())), RatFunc(parse_poly(F, in.r)))};
  const auto pc = find_algebra_for_degrees(F, parse_int_list(in.r_degrees));
  return {&F, QuatAlgebra(RatFunc(pc.algebra.a), RatFunc(pc.algebra.b))};
}

json int_list(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

json places_json(const RamSet& R) {
  json a = json::array();
  for (const auto& p : R.places) a.push_back(p.to_string());
  return a;
}

json unit_json(const TorsionUnit& u) {
  return json{{"element", u.to_string()}, {"trace", u.trace.to_string()}, {"norm", u.norm.to_string()},
              {"order", u.order}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

int cmd_formulas(const std::string& field, const std::string& degrees, int max_degree, bool as_json,
                 std::ostream& out) {
  const Field& F = parse_field(field);
  std::vector<RamProfile> profiles;
  if (!degrees.empty())
    profiles.emplace_back(F.q(), parse_int_list(degrees));
  else
    profiles = enumerate_profiles(F.q(), {2, 4}, max_degree);
  bool ok = true;
  json arr = json::array();
  for (const auto& R : profiles) {
    const Report r = make_report(R);
    ok = ok && r.all_pass();
    if (as_json) {
      arr.push_back(report_json(r));
      continue;
    }
    out << R.to_string() << "  wp=" << r.wp;
    if (r.checks.at("integral"))
      out << " g=" << r.genus << " V1=" << r.v1 << " Vq1=" << r.vq1 << " E=" << r.e;
    out << " eichler=" << r.eichler << "  " << (r.all_pass() ? "ok" : "FAIL") << "\n";
  }
  if (as_json) out << (degrees.empty() ? arr : arr[0]).dump(2) << "\n";
  return ok ? 0 : kExitCheckFailed;
}

int cmd_ramification(const AlgebraInput& in, std::ostream& out) {
  auto [F, alg] = resolve(in);
  StandardOrder ord(alg);
  const RamSet R = ramified_set(alg);
  json j{{"q", F->q()}, {"algebra", alg.to_string()}, {"ramified", places_json(R)}, {"degrees", int_list(R.degrees())}};
  if (!R.places.empty()) j["wp"] = wp(RamProfile(F->q(), R.degrees()));
  bool maximal = false;
  if (alg.is_polynomial()) {
    j["gram_disc"] = gram_disc(ord).to_string();
    maximal = certify_maximal(ord);
    j["maximal"] = maximal;
  }
  out << j.dump(2) << "\n";
  return maximal ? 0 : kExitCheckFailed;
}

int cmd_torsion(const AlgebraInput& in, int bound, bool census, std::ostream& out) {
  auto [F, alg] = resolve(in);
  StandardOrder ord(alg);
  const auto units = solve_torsion(ord, bound);
  json j{{"q", F->q()}, {"algebra", alg.to_string()}, {"bound", bound}};
  json arr = json::array();
  for (const auto& u : units) arr.push_back(unit_json(u));
  j["units"] = arr;
  bool ok = true;
  if (census) {
    const auto c = torsion_classes(ord, bound);
    json classes = json::array();
    for (const auto& cls : c.classes) {
      json members = json::array();
      for (const auto& m : cls.members) members.push_back(m.to_string());
      classes.push_back(json{{"representative", cls.members.front().to_string()}, {"members", members}});
    }
    j["classes"] = classes;
    j["conj_bound"] = c.conj_bound;
    j["expected"] = c.expected;
    ok = static_cast<long long>(c.classes.size()) == c.expected;
    j["checks"] = json{{"class_count", ok}};
  }
  out << j.dump(2) << "\n";
  return ok ? 0 : kExitCheckFailed;
}

struct QuotientRun {
  const Field* field;
  QuotientResult result;
  Report report;
};

QuotientRun run_quotient(const AlgebraInput& in, int precision) {
  auto [F, alg] = resolve(in);
  QuotientOptions opts;
  opts.precision = precision;
  QuotientRun run{F, build_quotient(alg, opts), {}};
  run.report = make_report(RamProfile(F->q(), run.result.ramification.degrees()), &run.result.graph);
  return run;
}

void emit_log(const QuotientRun& run, const std::string& path) {
  if (path.empty()) return;
  std::ostringstream s;
  for (const auto& e : run.result.log) s << log_entry_json(e).dump() << "\n";
  write_file(path, s.str());
}

}  // namespace

json report_json(const Report& r) {
  json j{{"q", r.profile.q}, {"R", int_list(r.profile.degrees)}, {"wp", r.wp}};
  if (r.checks.count("integral") && r.checks.at("integral")) {
    j["genus"] = r.genus;
    j["V1"] = r.v1;
    j["Vq1"] = r.vq1;
    j["E"] = r.e;
  }
  j["eichler"] = r.eichler;
  if (r.graph) {
    const auto& m = *r.graph;
    json cg = json::array();
    for (auto d : m.critical_group) cg.push_back(d);
    j["graph"] = json{{"V1", m.v1},
                      {"Vq1", m.vq1},
                      {"E", m.e},
                      {"h1", m.h1},
                      {"degrees", int_list(m.degree_set)},
                      {"smooth_point", m.smooth_point},
                      {"connected", m.connected},
                      {"no_loops", m.no_loops},
                      {"critical_group", cg}};
  }
  json checks = json::object();
  for (const auto& [k, v] : r.checks) checks[k] = v;
  j["checks"] = checks;
  j["pass"] = r.all_pass();
  return j;
}

json log_entry_json(const HomLogEntry& e) {
  return json{{"op", e.op},
              {"u", e.u},
              {"v", e.v},
              {"m", e.m},
              {"bound", e.bound},
              {"precision", e.precision},
              {"kernel_dim", e.kernel_dim},
              {"outcome", e.outcome},
              {"note", e.note}};
}

json graph_json(const QuotientResult& res, const Field& f) {
  const auto& g = res.graph;
  json verts = json::array();
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    const auto& v = g.vertices[k];
    verts.push_back(json{{"index", k},
                         {"lift", v.lift.to_string(f)},
                         {"stabilizer_order", v.stabilizer_order},
                         {"degree", v.degree},
                         {"terminal", v.stabilizer_order == g.q * g.q - 1}});
  }
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"from", e.from}, {"to", e.to}, {"multiplicity", e.multiplicity},
                         {"stabilizer_order", e.stabilizer_order}});
  json cg = json::array();
  for (auto d : critical_group(g)) cg.push_back(d);
  return json{{"q", g.q},
              {"algebra", "H(" + res.algebra.a.to_string() + ", " + res.algebra.b.to_string() + ")"},
              {"ramified", places_json(res.ramification)},
              {"precision", res.precision},
              {"vertices", verts},
              {"edges", edges},
              {"presentation", presentation(g).to_string()},
              {"critical_group", cg}};
}

std::string graph_dot(const QuotientResult& res, const Field& f) {
  const auto& g = res.graph;
  std::ostringstream s;
  s << "graph quotient {\n";
  s << "  label=\"H(" << res.algebra.a.to_string() << ", " << res.algebra.b.to_string() << "), q=" << g.q << "\";\n";
  s << "  node [shape=circle, fontname=\"Helvetica\"];\n";
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    const auto& v = g.vertices[k];
    s << "  v" << k << " [label=\"" << v.stabilizer_order << "\", tooltip=\"" << v.lift.to_string(f) << "\"";
    if (v.stabilizer_order == g.q * g.q - 1) s << ", shape=doublecircle, style=filled, fillcolor=\"#d0d0d0\"";
    s << "];\n";
  }
  for (const auto& e : g.edges)
    for (int m = 0; m < e.multiplicity; ++m)
      s << "  v" << e.from << " -- v" << e.to << " [label=\"" << e.stabilizer_order << "\"];\n";
  s << "}\n";
  return s.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quotients of the Bruhat-Tits tree by quaternion unit groups over F_q[T]"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);

  std::string f_field = "3", f_degrees;
  int f_max_degree = 4;
  bool f_json = false;
  auto* formulas = app.add_subcommand("formulas", "closed-form invariants of a ramification profile");
  formulas->add_option("--q", f_field, "field size")->capture_default_str();
  formulas->add_option("--R", f_degrees, "place degrees, e.g. 1,1; omitted: sweep #R in {2,4}");
  formulas->add_option("--max-degree", f_max_degree, "sweep degree bound")->capture_default_str();
  formulas->add_flag("--json", f_json, "JSON output");

  AlgebraInput ram_in;
  auto* ramification = app.add_subcommand("ramification", "ramified places and maximality certificate");
  add_algebra_options(ramification, ram_in);

  AlgebraInput tor_in;
  int tor_bound = 2;
  bool tor_census = false;
  auto* torsion = app.add_subcommand("torsion", "torsion units of the standard order");
  add_algebra_options(torsion, tor_in);
  torsion->add_option("--bound", tor_bound, "coefficient degree bound")->capture_default_str();
  torsion->add_flag("--census", tor_census, "cluster into conjugacy classes");

  AlgebraInput q_in;
  int precision = kDefaultPrecision;
  std::string json_path, dot_path, log_path;
  auto* quotient = app.add_subcommand("quotient", "build the quotient graph");
  add_algebra_options(quotient, q_in);
  quotient->add_option("--precision", precision, "initial Laurent precision")->capture_default_str();
  quotient->add_option("--json-out", json_path, "write graph JSON here instead of stdout");
  quotient->add_option("--dot-out", dot_path, "also write DOT here");
  quotient->add_option("--log", log_path, "write the hom_units run log (JSON lines)");

  AlgebraInput rep_in;
  auto* report = app.add_subcommand("report", "formula values against the measured quotient");
  add_algebra_options(report, rep_in);
  report->add_option("--precision", precision, "initial Laurent precision")->capture_default_str();
  report->add_option("--log", log_path, "write the hom_units run log (JSON lines)");

  AlgebraInput dot_in;
  auto* dot = app.add_subcommand("dot", "quotient graph in DOT");
  add_algebra_options(dot, dot_in);
  dot->add_option("--precision", precision, "initial Laurent precision")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  if (threads > 0) set_thread_count(threads);
  try {
    if (*formulas) return cmd_formulas(f_field, f_degrees, f_max_degree, f_json, out);
    if (*ramification) return cmd_ramification(ram_in, out);
    if (*torsion) return cmd_torsion(tor_in, tor_bound, tor_census, out);
    if (*quotient) {
      const auto run = run_quotient(q_in, precision);
      json j = graph_json(run.result, *run.field);
      j["report"] = report_json(run.report);
      if (json_path.empty())
        out << j.dump(2) << "\n";
      else
        write_file(json_path, j.dump(2) + "\n");
      if (!dot_path.empty()) write_file(dot_path, graph_dot(run.result, *run.field));
      emit_log(run, log_path);
      return run.report.all_pass() ? 0 : kExitCheckFailed;
    }
    if (*report) {
      const auto run = run_quotient(rep_in, precision);
      out << report_json(run.report).dump(2) << "\n";
      emit_log(run, log_path);
      return run.report.all_pass() ? 0 : kExitCheckFailed;
    }
    if (*dot) {
      const auto run = run_quotient(dot_in, precision);
      out << graph_dot(run.result, *run.field);
      return run.report.all_pass() ? 0 : kExitCheckFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return kExitCheckFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"btq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace btq::cli
