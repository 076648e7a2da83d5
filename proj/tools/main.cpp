// Command-line front end: seeded experiments, identity verification,
// feasibility/violation scans, and stream file emission.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bell/bell.hpp"

using json = nlohmann::ordered_json;
using namespace bell;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

double deg2rad(double d) { return d * M_PI / 180.0; }
double rad2deg(double r) { return r * 180.0 / M_PI; }

// Degrees with 6 decimal places, as serialized in every report.
double round6(double deg) { return std::round(deg * 1e6) / 1e6; }

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t generated = (std::uint64_t(rd()) << 32) | rd();
  std::cerr << "seed not given; using auto-generated seed " << generated << "\n";
  return generated;
}

PairSource make_source(const std::string& name) {
  if (name == "singlet") return SingletSource{};
  if (name == "bell-linear") return LhvModel::bell_linear();
  if (name == "nonlocal-toy") return LhvModel::nonlocal_toy();
  throw CLI::ValidationError("--model", "unknown model '" + name + "'");
}

CorrelationFunction make_function(const std::string& name) {
  if (name == "neg-cosine") return CorrelationFunction::neg_cosine();
  if (name == "cosine") return CorrelationFunction::cosine();
  if (name == "bell-linear") return CorrelationFunction::bell_linear();
  if (name.rfind("exponential", 0) == 0) {
    double length = 1.0;
    if (auto pos = name.find(':'); pos != std::string::npos)
      length = std::stod(name.substr(pos + 1));
    return CorrelationFunction::exponential(length);
  }
  throw CLI::ValidationError("--model", "unknown correlation function '" + name + "'");
}

struct GridSpec {
  double lo = -180.0, hi = 180.0;
  std::size_t steps = 64;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1, c2;
  std::istringstream in(text);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.steps) || c1 != ':' || c2 != ':')
    throw CLI::ValidationError("--grid", "expected lo:hi:steps");
  return g;
}

struct RefineSpec {
  std::size_t rounds = 4;
  double shrink = 0.25;
};

RefineSpec parse_refine(const std::string& text) {
  RefineSpec r;
  char c;
  std::istringstream in(text);
  if (!(in >> r.rounds >> c >> r.shrink) || c != ':')
    throw CLI::ValidationError("--refine", "expected rounds:shrink");
  return r;
}

void emit(const std::string& out_path, const std::string& format, const json& report,
          const std::string& csv) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  if (format == "json" || format == "both") write_atomic(out_path + ".json", report.dump(2) + "\n");
  if (format == "csv" || format == "both") write_atomic(out_path + ".csv", csv);
}

json correlations_json(const ViolationReport& report) {
  json out = json::array();
  for (const auto& c : report.correlations)
    out.push_back({{"label", c.label},
                   {"value", c.estimate.value()},
                   {"sum", c.estimate.sum},
                   {"n", c.estimate.n},
                   {"stderr", c.estimate.stderr_value()}});
  return out;
}

std::string correlations_csv(const ViolationReport& report) {
  std::ostringstream out;
  out << "label,value,stderr,n\n";
  for (const auto& c : report.correlations)
    out << c.label << ',' << c.estimate.value() << ',' << c.estimate.stderr_value() << ','
        << c.estimate.n << '\n';
  return out.str();
}

int cmd_verify_identity(const std::string& in_path, const std::string& out_path,
                        const std::string& format) {
  const MatchedStreamSet set = read_stream_file(in_path);
  if (set.count() != 3 && set.count() != 4)
    throw CLI::ValidationError("--in", "expected 3 or 4 stream columns, got " +
                                           std::to_string(set.count()));

  const IdentityReport identity =
      set.count() == 3
          ? bell_identity_three(set.stream(0), set.stream(1), set.stream(2))
          : bell_identity_four(set.stream(0), set.stream(1), set.stream(2), set.stream(3));

  json report;
  report["command"] = "verify-identity";
  report["config"] = {{"in", in_path}, {"columns", set.count()}};
  json labels = json::array();
  for (std::size_t k = 0; k < set.count(); ++k) labels.push_back(set.label(k));
  report["labels"] = labels;
  report["n"] = set.length();
  report["lhs"] = identity.lhs;
  report["rhs"] = identity.rhs;
  report["slack"] = identity.slack;
  report["holds"] = identity.holds;
  report["exact_numerators"] = identity.exact_numerators;

  std::ostringstream csv;
  csv << "lhs,rhs,slack,holds\n"
      << identity.lhs << ',' << identity.rhs << ',' << identity.slack << ','
      << (identity.holds ? 1 : 0) << '\n';
  emit(out_path, format, report, csv.str());

  if (!identity.holds) {
    // Index-matched columns cannot violate the identity; reaching this line
    // means the input was matched-shaped but the arithmetic failed.
    std::cerr << "internal error: matched streams reported a violated identity\n";
    return kExitInternal;
  }
  return 0;
}

int cmd_experiment(const std::string& model, const std::vector<double>& angles_deg,
                   std::size_t trials, std::optional<std::uint64_t> seed_opt,
                   const std::string& acquisition, const std::string& locality,
                   const std::string& out_path, const std::string& format) {
  if (angles_deg.size() != 3 && angles_deg.size() != 4)
    throw CLI::ValidationError("--angles",
                               "expected 3 (a,b,b') or 4 (a,a',b,b') comma-separated degrees");
  const std::uint64_t seed = resolve_seed(seed_opt);

  ExperimentProtocol protocol;
  protocol.acquisition =
      acquisition == "matched" ? Acquisition::Matched : Acquisition::Unmatched;
  protocol.locality = locality != "nonlocal";
  protocol.trials = trials;
  protocol.seed = seed;

  const PairSource source = make_source(model);
  ViolationReport result;
  if (angles_deg.size() == 3) {
    protocol.a_settings = {deg2rad(angles_deg[0])};
    protocol.b_settings = {deg2rad(angles_deg[1]), deg2rad(angles_deg[2])};
    result = three_correlation_experiment(source, protocol);
  } else {
    protocol.a_settings = {deg2rad(angles_deg[0]), deg2rad(angles_deg[1])};
    protocol.b_settings = {deg2rad(angles_deg[2]), deg2rad(angles_deg[3])};
    result = chsh_experiment(source, protocol);
  }
  result = slack_statistics(result);

  json report;
  report["command"] = "experiment";
  json angles = json::array();
  for (double a : angles_deg) angles.push_back(round6(a));
  report["config"] = {{"model", model},
                     {"angles_deg", angles},
                     {"trials", trials},
                     {"seed", seed},
                     {"acquisition", acquisition},
                     {"locality", locality}};
  report["expression"] = result.expression == ExpressionKind::ThreeTerm ? "three-term" : "chsh";
  report["correlations"] = correlations_json(result);
  report["lhs"] = result.lhs;
  report["rhs"] = result.rhs;
  report["slack"] = result.slack;
  report["stderr_of_slack"] = result.stderr_of_slack;
  report["violated"] = result.violated;
  report["exact"] = result.exact;

  emit(out_path, format, report, correlations_csv(result));
  return 0;
}

int cmd_scan(const std::string& model, const std::string& kind, const GridSpec& grid_spec,
             const RefineSpec& refine, const std::string& out_path, const std::string& format) {
  const CorrelationFunction f = make_function(model);

  // Grid bounds arrive in degrees for angular functions, raw units otherwise.
  ScanGrid grid;
  grid.lo = f.angular() ? deg2rad(grid_spec.lo) : grid_spec.lo;
  grid.hi = f.angular() ? deg2rad(grid_spec.hi) : grid_spec.hi;
  grid.steps = grid_spec.steps;
  grid.refinement_rounds = refine.rounds;
  grid.refinement_shrink = refine.shrink;

  const auto to_unit = [&](double x) { return f.angular() ? round6(rad2deg(x)) : x; };

  json report;
  report["command"] = "scan";
  report["config"] = {{"model", model},
                     {"scan", kind},
                     {"grid",
                      {{"lo", grid_spec.lo}, {"hi", grid_spec.hi}, {"steps", grid_spec.steps}}},
                     {"refine", {{"rounds", refine.rounds}, {"shrink", refine.shrink}}}};
  std::ostringstream csv;

  if (kind == "wss") {
    const auto verdict = wss_feasibility_scan(f, grid);
    report["feasible"] = verdict.feasible;
    report["worst_slack"] = verdict.worst_slack;
    report["worst_triple"] = {to_unit(verdict.worst_triple[0]), to_unit(verdict.worst_triple[1]),
                              to_unit(verdict.worst_triple[2])};
    report["violation_count"] = verdict.violations.size();
    csv << "x1,x2,x3,slack\n";
    for (const auto& v : verdict.violations)
      csv << to_unit(v.triple[0]) << ',' << to_unit(v.triple[1]) << ',' << to_unit(v.triple[2])
          << ',' << v.slack << '\n';
  } else if (kind == "three") {
    const auto result = violation_search_three(f, grid);
    report["best_angles_deg"] = {round6(rad2deg(result.angles[0])),
                                 round6(rad2deg(result.angles[1])),
                                 round6(rad2deg(result.angles[2]))};
    report["best_violation"] = result.violation;
    csv << "a,b,b2,violation\n"
        << round6(rad2deg(result.angles[0])) << ',' << round6(rad2deg(result.angles[1])) << ','
        << round6(rad2deg(result.angles[2])) << ',' << result.violation << '\n';
  } else if (kind == "chsh") {
    const auto result = violation_search_chsh(f, grid);
    report["best_angles_deg"] = {round6(rad2deg(result.angles[0])),
                                 round6(rad2deg(result.angles[1])),
                                 round6(rad2deg(result.angles[2])),
                                 round6(rad2deg(result.angles[3]))};
    report["best_excess"] = result.excess;
    csv << "a,a2,b,b2,excess\n"
        << round6(rad2deg(result.angles[0])) << ',' << round6(rad2deg(result.angles[1])) << ','
        << round6(rad2deg(result.angles[2])) << ',' << round6(rad2deg(result.angles[3])) << ','
        << result.excess << '\n';
  } else {
    throw CLI::ValidationError("--scan", "expected wss, three, or chsh");
  }

  emit(out_path, format, report, csv.str());
  return 0;
}

int cmd_streams(const std::string& model, const std::vector<double>& angles_deg,
                std::size_t trials, std::optional<std::uint64_t> seed_opt,
                const std::string& locality, const std::string& out_path) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const PairSource source = make_source(model);
  const auto* lhv = std::get_if<LhvModel>(&source);
  if (!lhv)
    throw CLI::ValidationError("--model", "stream emission needs a hidden-variable model");

  MatchedStreamSet set;
  std::size_t count = 0;
  if (angles_deg.size() == 3) {
    set = generate_matched_streams(*lhv,
                                   {{Side::A, deg2rad(angles_deg[0]), "a"},
                                    {Side::B, deg2rad(angles_deg[1]), "b"},
                                    {Side::B, deg2rad(angles_deg[2]), "b'"}},
                                   trials, seed);
    count = 3;
  } else if (angles_deg.size() == 4) {
    auto [streams, n_streams] = run_delayed_choice(
        *lhv, {deg2rad(angles_deg[0]), deg2rad(angles_deg[1])},
        {deg2rad(angles_deg[2]), deg2rad(angles_deg[3])}, locality != "nonlocal", trials, seed);
    set = std::move(streams);
    count = n_streams;
  } else {
    throw CLI::ValidationError("--angles", "expected 3 or 4 comma-separated degrees");
  }

  std::ostringstream body;
  write_stream_set(body, set);
  if (out_path.empty())
    std::cout << body.str();
  else
    write_atomic(out_path, body.str());
  std::cout << "streams: " << count << " (seed " << seed << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-data Bell identity and inequality toolkit"};
  app.require_subcommand(1);

  std::string model = "bell-linear";
  std::vector<double> angles_deg;
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;
  std::string acquisition = "matched";
  std::string locality = "local";
  std::string grid_text = "-180:180:64";
  std::string refine_text = "4:0.25";
  std::string scan_kind = "wss";
  std::string in_path, out_path;
  std::string format = "json";

  auto add_common = [&](CLI::App* cmd, bool with_protocol) {
    cmd->add_option("--out", out_path, "output base path (stdout when omitted)");
    cmd->add_option("--format", format, "json|csv|both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    if (with_protocol) {
      cmd->add_option("--model", model, "bell-linear|nonlocal-toy|singlet");
      cmd->add_option("--angles", angles_deg, "setting angles in degrees")->delimiter(',');
      cmd->add_option("--trials", trials, "trials per run");
      cmd->add_option("--seed", seed, "RNG seed (auto-generated when omitted)");
    }
  };

  auto* verify = app.add_subcommand("verify-identity", "check a stream file's identity");
  verify->add_option("--in", in_path, "stream file (header row + ±1 columns)")->required();
  add_common(verify, false);

  auto* experiment = app.add_subcommand("experiment", "run a three-term or CHSH experiment");
  add_common(experiment, true);
  experiment->add_option("--acquisition", acquisition, "matched|unmatched")
      ->check(CLI::IsMember({"matched", "unmatched"}));
  experiment->add_option("--locality", locality, "local|nonlocal")
      ->check(CLI::IsMember({"local", "nonlocal"}));

  auto* scan = app.add_subcommand("scan", "feasibility scan or violation search");
  scan->add_option("--model", model, "neg-cosine|cosine|bell-linear|exponential[:length]");
  scan->add_option("--scan", scan_kind, "wss|three|chsh");
  scan->add_option("--grid", grid_text, "lo:hi:steps (degrees for angular functions)");
  scan->add_option("--refine", refine_text, "rounds:shrink");
  add_common(scan, false);

  auto* streams = app.add_subcommand("streams", "emit matched/delayed-choice stream files");
  add_common(streams, true);
  streams->add_option("--locality", locality, "local|nonlocal")
      ->check(CLI::IsMember({"local", "nonlocal"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify_identity(in_path, out_path, format);
    if (experiment->parsed())
      return cmd_experiment(model, angles_deg, trials, seed, acquisition, locality, out_path,
                            format);
    if (scan->parsed())
      return cmd_scan(model, scan_kind, parse_grid(grid_text), parse_refine(refine_text),
                      out_path, format);
    if (streams->parsed())
      return cmd_streams(model, angles_deg, trials, seed, locality, out_path);
  } catch (const StreamParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
