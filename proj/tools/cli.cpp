#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "pacd/branching.hpp"
#include "pacd/calibration.hpp"
#include "pacd/descriptive.hpp"
#include "pacd/detection.hpp"
#include "pacd/experiments.hpp"
#include "pacd/graph_io.hpp"
#include "pacd/grow.hpp"
#include "pacd/parallel.hpp"
#include "pacd/verification.hpp"

#ifndef PACD_VERSION
#define PACD_VERSION "unknown"
#endif

namespace pacd::cli {
namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void check_output_path(const std::string& path) {
  if (path.empty()) throw io_error("output path is empty");
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw io_error("output directory does not exist: " + parent.string());
  }
}

std::ofstream open_csv(const std::string& path, const char* header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << header << '\n';
  return out;
}

void check_threads(unsigned threads) {
  if (threads < 1) throw invalid_config("--threads must be >= 1");
}

std::uint32_t to_u32(std::uint64_t x, const char* name) {
  if (x > UINT32_MAX) throw invalid_config(std::string(name) + " is too large");
  return static_cast<std::uint32_t>(x);
}

/// Options shared by the growth-based subcommands.
struct Model {
  std::uint64_t n = 0;
  std::uint32_t m = 2;
  double delta = 0.0;
  std::optional<double> delta_prime;
  std::optional<std::uint64_t> tau;
  std::optional<double> gamma;

  double shifted() const { return delta_prime.value_or(delta); }

  /// tau from --tau or --gamma; `fallback` when neither is given.
  std::uint64_t resolve_tau(std::uint64_t nn, std::uint64_t fallback) const {
    if (gamma) {
      if (!(*gamma >= 0.0 && *gamma <= 1.0)) throw invalid_config("--gamma must lie in [0, 1]");
      return tau_from_gamma(nn, *gamma);
    }
    return tau.value_or(fallback);
  }
};

void add_shift_options(CLI::App* sub, Model& model) {
  sub->add_option("--m", model.m, "edges per arriving vertex")->capture_default_str();
  sub->add_option("--delta", model.delta, "attachment shift before the change")->capture_default_str();
  sub->add_option("--delta-prime", model.delta_prime, "attachment shift after the change (default: --delta)");
}

void add_change_options(CLI::App* sub, Model& model) {
  auto* tau = sub->add_option("--tau", model.tau, "changepoint time");
  auto* gamma = sub->add_option("--gamma", model.gamma, "changepoint as tau = n - ceil(n^gamma)");
  tau->excludes(gamma);
  gamma->excludes(tau);
}

void add_config_option(CLI::App* sub) {
  sub->add_option("--config", "flat key=value file mirroring the flags; flags override it");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// Replaces --config PATH with the file's key=value pairs as flags, inserted
/// right after the subcommand name. Keys also given on the command line are
/// dropped so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> explicit_args;
  std::string path;
  std::size_t sub = args.size();
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      if (sub == args.size() && !args[k].empty() && args[k][0] != '-') sub = explicit_args.size();
      explicit_args.push_back(args[k]);
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file " + path);
  std::vector<std::string> from_file;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ConversionError("config line is not key=value: " + line);
    const std::string key = "--" + trim(line.substr(0, eq));
    if (std::find(explicit_args.begin(), explicit_args.end(), key) != explicit_args.end()) continue;
    from_file.push_back(key);
    from_file.push_back(trim(line.substr(eq + 1)));
  }
  if (sub == explicit_args.size()) return explicit_args;
  explicit_args.insert(explicit_args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, from_file.begin(), from_file.end());
  return explicit_args;
}

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_out, bool with_out = true) {
  sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads; results do not depend on it")->capture_default_str();
  if (with_out) {
    c.out = default_out;
    sub->add_option("--out", c.out, "output path")->capture_default_str();
  }
  add_config_option(sub);
}

RunManifest start_manifest(const std::string& command, const json& params, std::uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.parameters = params;
  m.seed = seed;
  m.version = PACD_VERSION;
  m.started = utc_timestamp();
  return m;
}

void emit(std::ostream& out, json summary) { out << summary.dump() << '\n'; }

// ---------------------------------------------------------------------------

int cmd_generate(const Model& model, const Common& c, const std::string& format, std::ostream& out) {
  check_output_path(c.out);
  const auto n = to_u32(model.n, "--n");
  GrowthConfig config{n, model.m, DeltaSchedule::change_at(model.delta, model.shifted(), model.resolve_tau(n, n)),
                      c.seed};
  config.validate();
  if (format != "binary" && format != "jsonl") throw invalid_config("--format must be binary or jsonl");
  const json params = {{"n", n},     {"m", model.m}, {"delta", model.delta}, {"delta_prime", model.shifted()},
                       {"tau", config.schedule.tau}, {"format", format}};
  RunManifest manifest = start_manifest("generate", params, c.seed);
  const EvolvingGraph g = grow(config);
  write_graph(c.out, g, format == "binary" ? GraphFormat::binary : GraphFormat::jsonl);
  manifest.outputs.push_back({c.out, ""});
  const std::string mpath = finish_manifest(manifest);
  emit(out, {{"command", "generate"}, {"n", n}, {"m", model.m}, {"records", g.record_count()},
             {"min_degree_count", min_degree_statistic(g, model.m)}, {"out", c.out}, {"manifest", mpath}});
  return kOk;
}

int report_verification(const char* name, const VerificationResult& r, std::ostream& out, std::ostream& err) {
  for (const auto& f : r.failures) err << "mismatch: " << f << '\n';
  emit(out, {{"command", name}, {"checked", r.checked}, {"mismatches", r.mismatches}, {"ok", r.ok()}});
  return r.ok() ? kOk : kMismatch;
}

int cmd_verify_lr(const std::vector<std::uint32_t>& ns, const std::vector<std::uint32_t>& ms,
                  const std::vector<std::uint32_t>& big_ms, const Model& model, bool custom_pair, std::ostream& out,
                  std::ostream& err) {
  std::vector<ShiftPair> pairs{{0.0, 1.0}, {1.0, -0.5}};
  if (custom_pair) pairs = {{model.delta, model.shifted()}};
  VerificationResult total;
  for (std::uint32_t n : ns) {
    for (std::uint32_t m : ms) {
      std::vector<std::uint32_t> prefixes = big_ms;
      if (prefixes.empty()) {
        for (std::uint32_t back : {2U, 3U}) {
          if (n >= back + 2) prefixes.push_back(n - back);
        }
      }
      for (std::uint32_t big_m : prefixes) {
        for (const auto& p : pairs) merge_into(total, verify_lr(n, m, big_m, p));
      }
    }
  }
  return report_verification("verify-lr", total, out, err);
}

int cmd_sweep_power(const std::vector<std::uint64_t>& ns, const Model& model, const std::vector<double>& gammas,
                    const std::vector<std::uint64_t>& taus, double alpha, std::size_t reps, const Common& c,
                    std::ostream& out) {
  check_output_path(c.out);
  check_threads(c.threads);
  if (gammas.empty() == taus.empty()) throw invalid_config("give exactly one of --gamma or --tau");
  if (!taus.empty() && ns.size() != 1) throw invalid_config("--tau needs a single --n");
  for (double g : gammas) {
    if (!(g >= 0.0 && g <= 1.0)) throw invalid_config("--gamma must lie in [0, 1]");
  }
  const json params = {{"n", ns},         {"m", model.m},   {"delta", model.delta}, {"delta_prime", model.shifted()},
                       {"gamma", gammas}, {"tau", taus},    {"alpha", alpha},       {"reps", reps}};
  RunManifest manifest = start_manifest("sweep-power", params, c.seed);
  auto csv = open_csv(c.out, "n,m,delta,delta_prime,gamma,Delta,alpha,reps,power,ci_lo,ci_hi");
  json rows = json::array();
  for (std::size_t a = 0; a < ns.size(); ++a) {
    const auto n = to_u32(ns[a], "--n");
    const Thresholds t = calibrate_threshold(n, model.m, model.delta, alpha, reps, derive_seed(c.seed, 2 * a), c.threads);
    const std::size_t points = gammas.empty() ? taus.size() : gammas.size();
    for (std::size_t b = 0; b < points; ++b) {
      const std::uint64_t tau = gammas.empty() ? taus[b] : tau_from_gamma(n, gammas[b]);
      const PowerReport r = estimate_power(n, model.m, model.delta, model.shifted(), tau, t, reps,
                                           derive_seed(derive_seed(c.seed, 2 * a + 1), b), c.threads);
      const double gamma = gammas.empty() ? r.gamma : gammas[b];
      csv << n << ',' << model.m << ',' << num(model.delta) << ',' << num(model.shifted()) << ',' << num(gamma) << ','
          << r.distance << ',' << num(alpha) << ',' << reps << ',' << num(r.power) << ',' << num(r.ci.lo) << ','
          << num(r.ci.hi) << '\n';
      rows.push_back({{"n", n}, {"gamma", gamma}, {"power", r.power}});
    }
  }
  csv.close();
  if (!csv) throw io_error("failed to write " + c.out);
  manifest.outputs.push_back({c.out, ""});
  const std::string mpath = finish_manifest(manifest);
  emit(out, {{"command", "sweep-power"}, {"rows", rows}, {"out", c.out}, {"manifest", mpath}});
  return kOk;
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = 5; k <= 15; ++k) g.push_back(k * 0.05);
  g.push_back(1.0);
  return g;
}

int cmd_calibrate(const Model& model, const std::vector<double>& grid, std::size_t reps, const Common& c,
                  std::ostream& out) {
  check_output_path(c.out);
  check_threads(c.threads);
  const auto n = to_u32(model.n, "--n");
  const json params = {{"n", n},       {"m", model.m}, {"delta", model.delta}, {"delta_prime", model.shifted()},
                       {"grid", grid}, {"reps", reps}};
  RunManifest manifest = start_manifest("calibrate", params, c.seed);
  const CalibrationCurve curve =
      build_calibration_curve(n, model.m, model.delta, model.shifted(), grid, reps, c.seed, c.threads);
  auto csv = open_csv(c.out, "tau_over_n,mean,sd,reps");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    csv << num(grid[k]) << ',' << num(curve.means[k]) << ',' << num(curve.sds[k]) << ',' << reps << '\n';
  }
  csv.close();
  if (!csv) throw io_error("failed to write " + c.out);
  manifest.outputs.push_back({c.out, ""});
  const std::string mpath = finish_manifest(manifest);
  emit(out, {{"command", "calibrate"}, {"points", grid.size()}, {"out", c.out}, {"manifest", mpath}});
  return kOk;
}

/// Rebuilds a curve from calibration.csv and the parameters recorded in its
/// manifest.
CalibrationCurve load_curve(const std::string& path) {
  std::ifstream mf(path + ".manifest.json");
  if (!mf) throw io_error("missing manifest for curve " + path);
  CalibrationCurve c;
  try {
    const json manifest = json::parse(mf);
    const json& p = manifest.at("parameters");
    c.n = p.at("n").get<std::uint32_t>();
    c.m = p.at("m").get<std::uint32_t>();
    c.delta = p.at("delta").get<double>();
    c.delta_prime = p.at("delta_prime").get<double>();
  } catch (const json::exception& e) {
    throw io_error(std::string("malformed curve manifest: ") + e.what());
  }
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "tau_over_n,mean,sd,reps") throw io_error("unexpected calibration header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double g = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    std::size_t reps = 0;
    char c1 = 0;
    char c2 = 0;
    char c3 = 0;
    if (!(row >> g >> c1 >> mean >> c2 >> sd >> c3 >> reps) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw io_error("malformed calibration row: " + line);
    }
    c.grid.push_back(g);
    c.means.push_back(mean);
    c.sds.push_back(sd);
    c.reps = reps;
  }
  if (c.grid.empty()) throw io_error("calibration file has no rows");
  return c;
}

int cmd_estimate(const std::string& curve_path, const std::vector<std::string>& graphs, const Model& model,
                 std::size_t reps, const Common& c, std::ostream& out) {
  check_output_path(c.out);
  check_threads(c.threads);
  const CalibrationCurve curve = load_curve(curve_path);
  struct Row {
    std::uint64_t tau;
    std::uint64_t tau_hat;
  };
  std::vector<Row> rows;
  json params = {{"curve", curve_path}, {"n", curve.n}, {"m", curve.m}, {"delta", curve.delta},
                 {"delta_prime", curve.delta_prime}};
  if (!graphs.empty()) {
    params["graphs"] = graphs;
    for (const auto& path : graphs) {
      const EvolvingGraph g = read_graph(path);
      rows.push_back({g.schedule().tau, estimate_changepoint(g, curve)});
    }
  } else {
    if (reps < 1) throw invalid_config("--reps must be >= 1");
    const std::uint64_t tau = model.resolve_tau(curve.n, curve.n / 2);
    params["tau"] = tau;
    params["reps"] = reps;
    GrowthConfig base{curve.n, curve.m, DeltaSchedule::change_at(curve.delta, curve.delta_prime, tau), c.seed};
    base.validate();
    const auto hats = parallel_map(reps, c.threads, [&](std::size_t r) {
      GrowthConfig cfg = base;
      cfg.seed = derive_seed(c.seed, r);
      return estimate_changepoint(grow(cfg), curve);
    });
    for (auto h : hats) rows.push_back({tau, h});
  }
  RunManifest manifest = start_manifest("estimate", params, c.seed);
  auto csv = open_csv(c.out, "n,tau,tau_hat,abs_err");
  std::vector<double> scaled;
  for (const auto& r : rows) {
    const std::uint64_t err = r.tau > r.tau_hat ? r.tau - r.tau_hat : r.tau_hat - r.tau;
    csv << curve.n << ',' << r.tau << ',' << r.tau_hat << ',' << err << '\n';
    scaled.push_back(static_cast<double>(err) / std::sqrt(static_cast<double>(curve.n)));
  }
  csv.close();
  if (!csv) throw io_error("failed to write " + c.out);
  manifest.outputs.push_back({c.out, ""});
  const std::string mpath = finish_manifest(manifest);
  emit(out, {{"command", "estimate"},
             {"n", curve.n},
             {"rows", rows.size()},
             {"median_abs_err_over_sqrt_n", median_of(scaled)},
             {"out", c.out},
             {"manifest", mpath}});
  return kOk;
}

int cmd_var_s(const Model& model, const std::vector<std::uint32_t>& late, std::size_t prefixes, std::size_t reps,
              const Common& c, std::ostream& out) {
  check_output_path(c.out);
  check_threads(c.threads);
  if (late.empty()) throw invalid_config("--N needs at least one value");
  const auto n = to_u32(model.n, "--n");
  const json params = {{"n", n},   {"m", model.m},           {"delta", model.delta}, {"delta_prime", model.shifted()},
                       {"N", late}, {"prefixes", prefixes}, {"reps", reps}};
  for (std::uint32_t big_n : late) ConditionalSetup{n, big_n, model.m, model.delta, model.shifted()}.validate();
  RunManifest manifest = start_manifest("var-s", params, c.seed);
  auto csv = open_csv(c.out, "n,N,prefix_id,var_S,cont_reps");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t a = 0; a < late.size(); ++a) {
    const ConditionalSetup setup{n, late[a], model.m, model.delta, model.shifted()};
    const auto result = variance_of_S(setup, prefixes, reps, derive_seed(c.seed, a), c.threads);
    std::vector<double> vars;
    for (const auto& r : result) {
      csv << n << ',' << late[a] << ',' << r.prefix_id << ',' << num(r.var_s) << ',' << r.cont_reps << '\n';
      vars.push_back(r.var_s);
    }
    xs.push_back(late[a]);
    ys.push_back(mean_of(vars));
  }
  csv.close();
  if (!csv) throw io_error("failed to write " + c.out);
  manifest.outputs.push_back({c.out, ""});
  const std::string mpath = finish_manifest(manifest);
  json summary = {{"command", "var-s"}, {"mean_var_S", ys}, {"out", c.out}, {"manifest", mpath}};
  const bool positive = std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; });
  if (xs.size() >= 2 && positive) summary["loglog_slope"] = loglog_slope(xs, ys);
  emit(out, summary);
  return kOk;
}

int cmd_dominance(const Model& model, std::uint32_t late, std::size_t samples, std::size_t prefixes,
                  std::uint64_t k_max, const Common& c, std::ostream& out) {
  check_output_path(c.out);
  check_threads(c.threads);
  const auto n = to_u32(model.n, "--n");
  const ConditionalSetup setup{n, late, model.m, model.delta, model.delta};
  setup.validate();
  if (samples < 1 || prefixes < 1) throw invalid_config("--reps and --prefixes must be >= 1");
  if (k_max < 1) throw invalid_config("--kmax must be >= 1");
  const json params = {{"n", n},           {"m", model.m},         {"delta", model.delta}, {"N", late},
                       {"reps", samples},  {"prefixes", prefixes}, {"kmax", k_max}};
  RunManifest manifest = start_manifest("dominance", params, c.seed);
  const auto comps = component_size_samples(setup, samples, prefixes, derive_seed(c.seed, 0), c.threads);
  const TreeSamples tree = tree_size_samples(OffspringLaw(model.m, late, n), samples, derive_seed(c.seed, 1));
  auto csv = open_csv(c.out, "k,ccdf_component,ccdf_tree,bound,se_component,se_tree");
  for (const auto& r : dominance_table(comps, tree.sizes, k_max)) {
    csv << r.k << ',' << num(r.ccdf_component) << ',' << num(r.ccdf_tree) << ',' << num(r.bound) << ','
        << num(r.se_component) << ',' << num(r.se_tree) << '\n';
  }
  csv.close();
  if (!csv) throw io_error("failed to write " + c.out);
  manifest.outputs.push_back({c.out, ""});
  const std::string mpath = finish_manifest(manifest);
  emit(out, {{"command", "dominance"}, {"tree_overflows", tree.overflows}, {"out", c.out}, {"manifest", mpath}});
  return kOk;
}

int cmd_bounded_diff(const Model& model, std::uint32_t late, std::size_t trials, const Common& c, std::ostream& out) {
  const auto n = to_u32(model.n, "--n");
  const ConditionalSetup setup{n, late, model.m, model.delta, model.shifted()};
  if (trials < 1) throw invalid_config("--reps must be >= 1");
  const BoundedDifferenceReport r = bounded_difference_check(setup, trials, c.seed);
  emit(out, {{"command", "bounded-diff"},
             {"trials", r.trials},
             {"max_normalized_difference", r.max_normalized},
             {"bound", r.bound},
             {"untouched_mismatches", r.untouched_mismatches},
             {"identical_redraws", r.identical_redraws},
             {"holds", r.holds()}});
  return r.holds() ? kOk : kMismatch;
}

constexpr const char* kFooter =
    "Exit codes: 0 success, 1 verification mismatch, 2 usage error (unknown flag or malformed value),\n"
    "3 parameter out of range, 4 file or path error, 5 computation failure (caps, degenerate curves).";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Changepoint detection experiments for preferential attachment graphs", "pacd"};
  app.footer(kFooter);
  app.set_version_flag("--version", PACD_VERSION);
  app.require_subcommand(1);

  Model model;
  Common common;

  auto* gen = app.add_subcommand("generate", "grow one graph and write it to a file");
  std::string format = "binary";
  gen->add_option("--n", model.n, "number of vertices")->required();
  add_shift_options(gen, model);
  add_change_options(gen, model);
  gen->add_option("--format", format, "binary or jsonl")->capture_default_str();
  add_common(gen, common, "graph.pacg");

  auto* vlr = app.add_subcommand("verify-lr", "closed-form likelihood ratio against exhaustive enumeration");
  std::vector<std::uint32_t> lr_ns{4, 5, 6};
  std::vector<std::uint32_t> lr_ms{1, 2};
  std::vector<std::uint32_t> lr_big_ms;
  vlr->add_option("--n", lr_ns, "snapshot sizes")->delimiter(',')->capture_default_str();
  vlr->add_option("--m", lr_ms, "edges per vertex")->delimiter(',')->capture_default_str();
  vlr->add_option("--M", lr_big_ms, "prefix sizes (default n-2 and n-3, at least 2)")->delimiter(',');
  auto* vlr_d = vlr->add_option("--delta", model.delta, "use this single (delta, delta') pair");
  auto* vlr_dp = vlr->add_option("--delta-prime", model.delta_prime);
  vlr_d->needs(vlr_dp);
  vlr_dp->needs(vlr_d);
  add_config_option(vlr);

  auto* venc = app.add_subcommand("verify-encoding", "encoding-induced law against the attachment law");
  std::uint32_t max_t = 6;
  std::vector<std::uint32_t> enc_ms{1, 2};
  std::vector<double> enc_deltas{-0.5, 0.0, 1.0};
  venc->add_option("--max-t", max_t, "largest arrival time checked")->capture_default_str();
  venc->add_option("--m", enc_ms, "edges per vertex")->delimiter(',')->capture_default_str();
  venc->add_option("--delta", enc_deltas, "shifts")->delimiter(',')->capture_default_str();
  add_config_option(venc);

  auto* sweep = app.add_subcommand("sweep-power", "power of the minimum-degree test over a grid of n and gamma");
  std::vector<std::uint64_t> sweep_ns;
  std::vector<double> sweep_gammas;
  std::vector<std::uint64_t> sweep_taus;
  double alpha = 0.05;
  std::size_t sweep_reps = 400;
  sweep->add_option("--n", sweep_ns, "graph sizes")->delimiter(',')->required();
  add_shift_options(sweep, model);
  auto* sg = sweep->add_option("--gamma", sweep_gammas, "changepoint exponents")->delimiter(',');
  auto* st = sweep->add_option("--tau", sweep_taus, "changepoint times (single n only)")->delimiter(',');
  sg->excludes(st);
  st->excludes(sg);
  sweep->add_option("--alpha", alpha, "test level")->capture_default_str();
  sweep->add_option("--reps", sweep_reps, "replicates for calibration and for each power estimate")
      ->capture_default_str();
  add_common(sweep, common, "power.csv");

  auto* cal = app.add_subcommand("calibrate", "mean curve of the statistic against tau / n");
  std::vector<double> grid = default_grid();
  std::size_t cal_reps = 100;
  cal->add_option("--n", model.n, "number of vertices")->required();
  add_shift_options(cal, model);
  cal->add_option("--grid", grid, "increasing tau / n values ending at 1")->delimiter(',')->capture_default_str();
  cal->add_option("--reps", cal_reps, "replicates per grid point")->capture_default_str();
  add_common(cal, common, "calibration.csv");

  auto* est = app.add_subcommand("estimate", "changepoint estimates from a calibration curve");
  std::string curve_path = "calibration.csv";
  std::vector<std::string> graph_paths;
  std::size_t est_reps = 100;
  est->add_option("--curve", curve_path, "calibration.csv written by calibrate")->capture_default_str();
  est->add_option("--graph", graph_paths, "graph files to estimate (default: simulate --reps graphs)")
      ->delimiter(',');
  add_change_options(est, model);
  est->add_option("--reps", est_reps, "simulated graphs")->capture_default_str();
  add_common(est, common, "estimator.csv");

  auto* var = app.add_subcommand("var-s", "variance of S across continuations for several N");
  std::vector<std::uint32_t> var_late;
  std::size_t var_prefixes = 20;
  std::size_t var_reps = 500;
  model.n = 100000;
  var->add_option("--n", model.n, "number of vertices")->capture_default_str();
  var->add_option("--N", var_late, "late vertex counts")->delimiter(',')->required();
  add_shift_options(var, model);
  var->add_option("--prefixes", var_prefixes, "prefixes per N")->capture_default_str();
  var->add_option("--reps", var_reps, "continuations per prefix")->capture_default_str();
  add_common(var, common, "varS.csv");

  auto* dom = app.add_subcommand("dominance", "component sizes against the branching tree");
  std::uint32_t dom_late = 1000;
  std::size_t dom_samples = 100000;
  std::size_t dom_prefixes = 100;
  std::uint64_t k_max = 10;
  dom->add_option("--n", model.n, "number of vertices")->capture_default_str();
  dom->add_option("--N", dom_late, "late vertex count")->capture_default_str();
  dom->add_option("--m", model.m, "edges per arriving vertex")->capture_default_str();
  dom->add_option("--delta", model.delta, "attachment shift")->capture_default_str();
  dom->add_option("--reps", dom_samples, "samples of each size")->capture_default_str();
  dom->add_option("--prefixes", dom_prefixes, "independent prefixes")->capture_default_str();
  dom->add_option("--kmax", k_max, "largest k tabulated")->capture_default_str();
  add_common(dom, common, "dominance.csv");

  auto* bd = app.add_subcommand("bounded-diff", "single-entry resampling changes of S");
  std::uint32_t bd_late = 100;
  std::size_t bd_trials = 10000;
  bd->add_option("--n", model.n, "number of vertices");
  bd->add_option("--N", bd_late, "late vertex count")->capture_default_str();
  add_shift_options(bd, model);
  bd->add_option("--reps", bd_trials, "resampling trials")->capture_default_str();
  add_common(bd, common, "", false);

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << PACD_VERSION << '\n';
    return kOk;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*gen) return cmd_generate(model, common, format, out);
    if (*vlr) return cmd_verify_lr(lr_ns, lr_ms, lr_big_ms, model, vlr_d->count() > 0, out, err);
    if (*venc) return report_verification("verify-encoding", verify_encoding(max_t, enc_ms, enc_deltas), out, err);
    if (*sweep) return cmd_sweep_power(sweep_ns, model, sweep_gammas, sweep_taus, alpha, sweep_reps, common, out);
    if (*cal) return cmd_calibrate(model, grid, cal_reps, common, out);
    if (*est) return cmd_estimate(curve_path, graph_paths, model, est_reps, common, out);
    if (*var) return cmd_var_s(model, var_late, var_prefixes, var_reps, common, out);
    if (*dom) return cmd_dominance(model, dom_late, dom_samples, dom_prefixes, k_max, common, out);
    if (*bd) {
      if (bd->count("--n") == 0) model.n = 10000;
      return cmd_bounded_diff(model, bd_late, bd_trials, common, out);
    }
  } catch (const invalid_config& e) {
    err << "error: " << e.what() << '\n';
    return kRange;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputation;
  }
  return kUsage;
}

}  // namespace pacd::cli
