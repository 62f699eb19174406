#include "tim/cli.hpp"

#include "tim/bounds.hpp"
#include "tim/error.hpp"
#include "tim/graphs.hpp"
#include "tim/oracle.hpp"
#include "tim/scheme.hpp"
#include "tim/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace tim {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedDocument, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MalformedDocument, "cannot write '" + path + "'");
  out << body;
}

// Writes to --out when given, otherwise to the command's stdout.
void emit(const std::string& out_path, std::ostream& out, const std::string& body) {
  if (out_path.empty()) {
    out << body;
  } else {
    write_file(out_path, body);
  }
}

std::string json_line(const nlohmann::json& j) { return j.dump() + "\n"; }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotBestTopology:
    case ErrorCode::WrongClass: return kExitClassError;
    case ErrorCode::PlanInfeasible: return kExitInfeasible;
    default: return kExitParseError;
  }
}

struct Options {
  std::string topology_path;
  std::string scheme_path;
  std::string out_path;
  std::string dot_path;
  std::string target;
  std::string density = "1/2";
  std::string format = "json";
  std::uint64_t seed = 1;
  int trials = kDefaultTrials;
  int k = 0;
  bool exhaustive = false;
  std::uint64_t random_count = 0;
};

int cmd_analyze(const Options& o, std::ostream& out) {
  auto t = parse_topology(read_file(o.topology_path));
  auto a = analyze(t);
  if (!o.dot_path.empty()) write_file(o.dot_path, to_dot(a));
  emit(o.out_path, out, json_line(analysis_to_json(a)));
  return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  auto a = analyze(parse_topology(read_file(o.topology_path)));
  auto b = upper_bound(a);
  auto c = classify(a);
  if (o.format == "text") {
    std::ostringstream s;
    s << std::setprecision(6);
    s << "class       " << to_string(c) << "\n";
    s << "bound       " << to_pq(b.value) << " (" << to_double(b.value) << ")\n";
    s << "delta term  " << to_pq_or_inf(b.delta_term);
    if (b.delta_term) s << " (" << to_double(*b.delta_term) << ")";
    s << "\ncycle term  " << to_pq_or_inf(b.cycle_term);
    if (b.cycle_term) s << " (" << to_double(*b.cycle_term) << ")";
    s << "\n";
    if (c == TopologyClass::InterferenceFree) s << "note        no cross links; every pair is isolated\n";
    emit(o.out_path, out, s.str());
  } else {
    emit(o.out_path, out, json_line(bound_to_json(b, c)));
  }
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  auto t = parse_topology(read_file(o.topology_path));
  auto s = synthesize(t, analyze(t), o.seed);
  emit(o.out_path, out, json_line(scheme_to_json(s)));
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto t = parse_topology(read_file(o.topology_path));
  auto s = parse_scheme(read_file(o.scheme_path));
  Rational target = o.target.empty() ? upper_bound(analyze(t)).value : parse_rational(o.target);
  auto report = verify_scheme(t, s, target, o.trials, o.seed);
  emit(o.out_path, out, json_line(report_to_json(report)));
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_survey(const Options& o, std::ostream& out) {
  if (o.exhaustive == (o.random_count > 0)) {
    throw Error(ErrorCode::MalformedDocument, "survey needs exactly one of --exhaustive or --random <n>");
  }
  std::ofstream file;
  std::ostream* records = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::MalformedDocument, "cannot write '" + o.out_path + "'");
    records = &file;
  }
  SurveySummary summary;
  auto sink = [&](const SurveyRecord& r) {
    summary.add(r);
    *records << json_line(record_to_json(r));
  };
  if (o.exhaustive) {
    exhaustive_survey(o.k, o.seed, sink);
  } else {
    double density = to_double(parse_rational(o.density));
    sampled_survey(o.k, o.random_count, density, o.seed, sink);
  }
  out << json_line({{"summary", summary_to_json(summary)}});
  return summary.flag_count == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  auto a = analyze(parse_topology(read_file(o.topology_path)));
  emit(o.out_path, out, to_dot(a));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological interference management with reconfigurable antennas", "tim"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Alignment/conflict graph analysis as JSON");
  analyze_cmd->add_option("topology", o.topology_path, "Topology file (JSON or compact text)")->required();
  analyze_cmd->add_option("--dot", o.dot_path, "Also write a Graphviz rendering");
  analyze_cmd->add_option("--out", o.out_path, "Output path (default stdout)");

  auto* bound_cmd = app.add_subcommand("bound", "Linear symmetric DoF upper bound");
  bound_cmd->add_option("topology", o.topology_path, "Topology file")->required();
  bound_cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  bound_cmd->add_option("--out", o.out_path, "Output path (default stdout)");

  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a verified linear scheme");
  synth_cmd->add_option("topology", o.topology_path, "Topology file")->required();
  synth_cmd->add_option("--seed", o.seed, "Random seed");
  synth_cmd->add_option("--out", o.out_path, "Output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a scheme by exact rank computations");
  verify_cmd->add_option("topology", o.topology_path, "Topology file")->required();
  verify_cmd->add_option("scheme", o.scheme_path, "Scheme JSON file")->required();
  verify_cmd->add_option("--target", o.target, "Target symmetric rate p/q (default: the upper bound)");
  verify_cmd->add_option("--trials", o.trials, "Independent channel draws")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", o.seed, "Random seed");
  verify_cmd->add_option("--out", o.out_path, "Output path (default stdout)");

  auto* survey_cmd = app.add_subcommand("survey", "Consistency survey over many topologies");
  survey_cmd->add_option("--k", o.k, "Number of users")->required()->check(CLI::PositiveNumber);
  survey_cmd->add_flag("--exhaustive", o.exhaustive, "Every topology (K <= 4)");
  survey_cmd->add_option("--random", o.random_count, "Number of random topologies (K <= 8)");
  survey_cmd->add_option("--density", o.density, "Cross-link probability p/q");
  survey_cmd->add_option("--seed", o.seed, "Random seed");
  survey_cmd->add_option("--out", o.out_path, "JSON-lines record output (default stdout)");

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of the alignment and conflict graphs");
  dot_cmd->add_option("topology", o.topology_path, "Topology file")->required();
  dot_cmd->add_option("--out", o.out_path, "Output path (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParseError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(o, out);
    if (*bound_cmd) return cmd_bound(o, out);
    if (*synth_cmd) return cmd_synth(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*survey_cmd) return cmd_survey(o, out);
    if (*dot_cmd) return cmd_export_dot(o, out);
  } catch (const Error& e) {
    err << "tim: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitParseError;
}

}  // namespace tim
