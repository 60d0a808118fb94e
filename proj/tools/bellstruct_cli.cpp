// Command-line front end.  Subcommands: bound, eval, table1, verify, facets.
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellstruct/json_io.hpp"
#include "bellstruct/optim.hpp"
#include "bellstruct/polytope.hpp"
#include "bellstruct/qstate.hpp"
#include "bellstruct/verify.hpp"
#include "bellstruct/wcorr.hpp"

using namespace bellstruct;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ordered_json manifest(const std::string& command, const ordered_json& flags,
                      unsigned seed, const Clock& clock) {
  ordered_json m;
  m["command"] = command;
  m["flags"] = flags;
  m["seed"] = seed;
  m["version"] = kVersion;
  m["wall_time_s"] = clock.seconds();
  return m;
}

void emit(const ordered_json& output, const std::string& out_path) {
  std::string text = output.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << text;
  }
}

// Named inequality if recognized, otherwise bracket text.  The bound is the
// published one for names and the computed exact bound otherwise.
KnownInequality resolve_inequality(const std::string& text) {
  try {
    return known_inequality(text);
  } catch (const std::invalid_argument&) {
  }
  SymmetricBellPolynomial poly = parse_bracket(text);
  return {poly, local_bound(poly).bound};
}

PureState make_state(const std::string& family, int n, int d, int excitations) {
  if (family == "w") return w_state(n);
  if (family == "ghz") return ghz_state(n);
  if (family == "dicke") return dicke_state(n, excitations);
  if (family == "gghz") {
    std::vector<Complex> amps(d, Complex(1.0 / std::sqrt(static_cast<double>(d))));
    return generalized_ghz(amps, n);
  }
  throw CLI::ValidationError("--state", "unknown family: " + family);
}

int cmd_bound(const std::string& ineq, const std::string& out_path, unsigned seed) {
  Clock clock;
  KnownInequality known = resolve_inequality(ineq);
  LocalBoundResult result = local_bound(known.poly);

  ordered_json j;
  j["inequality"] = format_bracket(known.poly);
  j["n_parties"] = known.poly.n_parties;
  j["bound"] = format_rational(result.bound);
  j["witness"] = result.witness.counts;
  if (result.bound != known.bound)
    j["published_bound"] = format_rational(known.bound);
  j["manifest"] = manifest("bound", {{"ineq", ineq}}, seed, clock);
  emit(j, out_path);
  return 0;
}

int cmd_eval(const std::string& ineq, const std::string& family, int n, int d,
             int excitations, double theta0, double theta1,
             const std::string& scenario_path, bool closed_form,
             const std::string& out_path, unsigned seed) {
  Clock clock;
  KnownInequality known = resolve_inequality(ineq);
  if (n == 0) n = known.poly.n_parties;
  if (known.poly.n_parties != n)
    throw std::invalid_argument("inequality is on " +
                                std::to_string(known.poly.n_parties) +
                                " parties but --n is " + std::to_string(n));

  double value = 0;
  if (closed_form) {
    if (family != "w")
      throw std::invalid_argument("--closed-form applies to the w family only");
    value = evaluate_w_symmetric(known.poly, n, {theta0, theta1});
  } else {
    MeasurementScenario scenario;
    if (!scenario_path.empty()) {
      std::ifstream file(scenario_path);
      if (!file) throw std::invalid_argument("cannot read " + scenario_path);
      scenario = scenario_from_json(nlohmann::json::parse(file));
      if (scenario.n_parties() != n)
        throw std::invalid_argument("scenario party count mismatch");
    } else {
      scenario = MeasurementScenario::symmetric_xz(n, theta0, theta1);
    }
    value = quantum_value(known.poly, make_state(family, n, d, excitations), scenario);
  }

  ordered_json j;
  j["inequality"] = format_bracket(known.poly);
  j["state"] = family;
  j["n"] = n;
  j["value"] = value;
  j["local_bound"] = format_rational(known.bound);
  if (value > 0)
    j["w"] = noise_resistance(boost::rational_cast<double>(known.bound), value);
  j["manifest"] = manifest("eval",
                           {{"ineq", ineq},
                            {"state", family},
                            {"theta0", theta0},
                            {"theta1", theta1},
                            {"closed_form", closed_form}},
                           seed, clock);
  emit(j, out_path);
  return 0;
}

int cmd_table1(const std::vector<int>& n_list, unsigned seed, const std::string& out_path) {
  Clock clock;
  OptimizationConfig config;
  config.grid_resolution = 240;
  config.restarts = 12;
  config.rng_seed = seed;
  auto rows = table1(n_list, config);

  std::ostringstream csv;
  csv << "N,bound,Q,w,theta0,theta1\n";
  for (const auto& row : rows)
    csv << row.n << "," << format_rational(row.bound) << "," << row.quantum << ","
        << row.w << "," << row.theta0 << "," << row.theta1 << "\n";
  csv << "# manifest: "
      << manifest("table1", {{"n_list", n_list}}, seed, clock).dump() << "\n";

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << csv.str();
  }
  return 0;
}

int cmd_verify(const std::string& target, unsigned seed, const std::string& out_path) {
  Clock clock;
  std::vector<verify::CheckResult> results;
  if (target == "appendixA") {
    results = verify::appendix_a(seed);
  } else if (target == "appendixB") {
    results = verify::appendix_b(seed);
  } else if (target == "appendixC") {
    results = verify::appendix_c(seed);
  } else if (target == "scbi-certificate") {
    results = verify::scbi_certificate_suite(seed);
  } else if (target == "frustration") {
    results = verify::frustration_suite();
  } else if (target == "facets") {
    results = verify::facet_suite();
  } else {
    throw CLI::ValidationError("target", "unknown verify target: " + target);
  }

  ordered_json j;
  j["target"] = target;
  j["checks"] = ordered_json::array();
  for (const auto& r : results)
    j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  bool pass = verify::all_pass(results);
  j["pass"] = pass;
  j["manifest"] = manifest("verify", {{"target", target}}, seed, clock);
  emit(j, out_path);
  return pass ? 0 : 1;
}

int cmd_facets(int n, unsigned seed, const std::string& out_path) {
  Clock clock;
  auto facets = enumerate_facets(n);

  ordered_json j;
  j["n"] = n;
  j["facets"] = ordered_json::array();
  for (const auto& f : facets) {
    SymmetricBellPolynomial poly = f.to_polynomial(n);
    j["facets"].push_back({{"inequality", format_bracket(poly)},
                           {"bound", f.bound.str()}});
  }
  if (n == 4) {
    auto [i4, i4_bound] = known_inequality("I4");
    bool found = false;
    for (const auto& f : facets)
      if (facet_matches(f, i4, i4_bound, n)) found = true;
    j["contains_I4"] = found;
  }
  if (n == 5) {
    auto [i5, i5_bound] = known_inequality("I5");
    bool found = false;
    for (const auto& f : facets)
      if (facet_matches(f, i5, i5_bound, n)) found = true;
    j["contains_I5"] = found;
  }
  j["manifest"] = manifest("facets", {{"n", n}}, seed, clock);
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric multipartite Bell polynomial toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  unsigned seed = 1;
  std::string out_path;
  app.add_option("--seed", seed, "RNG seed for randomized subcommands");
  app.add_option("--out", out_path, "write output to this file instead of stdout");

  auto* bound = app.add_subcommand("bound", "exact local bound of an inequality");
  std::string bound_ineq;
  bound->add_option("--ineq", bound_ineq, "name (M3, S3, B, I4, I5, MABK_<N>, BN_<N>) or bracket text")
      ->required();

  auto* eval = app.add_subcommand("eval", "quantum value on a state");
  std::string eval_ineq, eval_state = "w", scenario_path;
  int eval_n = 0, eval_d = 2, eval_k = 1;
  double theta0 = 0, theta1 = 0;
  bool closed_form = false;
  eval->add_option("--ineq", eval_ineq)->required();
  eval->add_option("--state", eval_state, "w | ghz | gghz | dicke");
  eval->add_option("--n", eval_n, "party count (defaults to the inequality's)");
  eval->add_option("--d", eval_d, "Schmidt rank for gghz");
  eval->add_option("--k", eval_k, "excitation count for dicke");
  eval->add_option("--theta0", theta0, "shared XZ angle, setting 0");
  eval->add_option("--theta1", theta1, "shared XZ angle, setting 1");
  eval->add_option("--scenario", scenario_path, "per-party scenario JSON file");
  eval->add_flag("--closed-form", closed_form, "use the analytic W-state path");

  auto* tbl = app.add_subcommand("table1", "noise-resistance table as CSV");
  std::vector<int> n_list = {4, 5, 6, 7, 8, 10, 12, 15, 20, 40};
  tbl->add_option("--n-list", n_list, "party counts, one row each");

  auto* ver = app.add_subcommand("verify", "run a published-value check suite");
  std::string target;
  ver->add_option("target", target,
                  "appendixA | appendixB | appendixC | scbi-certificate | frustration | facets")
      ->required();

  auto* fac = app.add_subcommand("facets", "enumerate projected-polytope facets");
  int fac_n = 0;
  fac->add_option("--n", fac_n, "party count, 3 to 5")->required();

  try {
    app.parse(argc, argv);
    if (bound->parsed()) return cmd_bound(bound_ineq, out_path, seed);
    if (eval->parsed())
      return cmd_eval(eval_ineq, eval_state, eval_n, eval_d, eval_k, theta0, theta1,
                      scenario_path, closed_form, out_path, seed);
    if (tbl->parsed()) return cmd_table1(n_list, seed, out_path);
    if (ver->parsed()) return cmd_verify(target, seed, out_path);
    if (fac->parsed()) return cmd_facets(fac_n, seed, out_path);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
