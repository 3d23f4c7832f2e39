// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Optional argument: directory for the experiment CSVs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pacd.hpp"

using namespace pacd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::filesystem::path g_out_dir;

void write_csv(const std::string& name, const std::string& header, const std::vector<std::string>& rows) {
  if (g_out_dir.empty()) return;
  std::ofstream out(g_out_dir / name);
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
}

const std::vector<std::pair<double, double>> kShiftPairs{{0.0, 1.0}, {1.0, -0.5}};

// Full-scale experiment defaults.
constexpr std::uint32_t kM = 2;
constexpr double kDelta = 0.0;
constexpr double kDeltaPrime = 2.0;

Outcome encoding_exactness() {
  std::uint64_t checked = 0;
  std::uint64_t bad = 0;
  for (std::uint32_t m : {1U, 2U}) {
    for (double d : {-0.5, 0.0, 1.0}) {
      const Rational exact = exact_rational(d);
      // States before every step (t, i) with t <= 6.
      for (std::uint64_t k = 0; k < 4ULL * m; ++k) {
        for_each_state(GrowthState(m), k, DeltaSchedule::constant(d, 6), [&](const GrowthState& s, const Rational&) {
          ++checked;
          if (encoding_induced_law(s, d) != attachment_distribution<Rational>(s, exact)) ++bad;
        });
      }
    }
  }
  return {checked > 0 && bad == 0,
          "states=" + std::to_string(checked) + " mismatches=" + std::to_string(bad)};
}

struct OracleTotals {
  std::uint64_t snapshots = 0;
  std::uint64_t lr_mismatches = 0;
  std::uint64_t prefixes = 0;
  std::uint64_t mean_failures = 0;
};

OracleTotals oracle_grid() {
  OracleTotals out;
  for (std::uint32_t n : {4U, 5U, 6U}) {
    for (std::uint32_t m : {1U, 2U}) {
      for (std::uint32_t big_m : {n - 2, n - 3}) {
        if (big_m < 2) continue;  // a prefix needs v1 and v2
        for (const auto& [d, dp] : kShiftPairs) {
          for (const auto& pre : enumerate_histories(big_m, m, DeltaSchedule::constant(d, big_m))) {
            const LawPair laws = one_step_laws(pre.history, n, d, dp);
            Rational expectation(0);
            for (const auto& [key, entry] : laws.null_law) {
              const auto closed =
                  likelihood_ratio<Rational>(entry.representative, big_m, exact_rational(d), exact_rational(dp));
              ++out.snapshots;
              if (closed.l != ratio_from_laws(laws, key)) ++out.lr_mismatches;
              expectation += entry.probability * closed.l;
            }
            ++out.prefixes;
            if (expectation != Rational(1)) ++out.mean_failures;
          }
        }
      }
    }
  }
  return out;
}

Outcome lr_equivalence(const OracleTotals& t) {
  return {t.snapshots > 0 && t.lr_mismatches == 0,
          "snapshots=" + std::to_string(t.snapshots) + " mismatches=" + std::to_string(t.lr_mismatches)};
}

Outcome martingale(const OracleTotals& t) {
  const ConditionalSetup setup{2000, 50, kM, kDelta, kDeltaPrime};
  const MeanEstimate mc = mean_likelihood_ratio(setup, 2000, 0xC3);
  const bool exact_ok = t.prefixes > 0 && t.mean_failures == 0;
  const bool mc_ok = std::abs(mc.mean - 1.0) <= 3 * mc.se;
  return {exact_ok && mc_ok, "exact prefixes=" + std::to_string(t.prefixes) +
                                 " failures=" + std::to_string(t.mean_failures) + fmt(" | MC mean=%.4f", mc.mean) +
                                 fmt(" se=%.4f", mc.se)};
}

Outcome null_identity() {
  SplitMix64 rng(0xC4);
  std::size_t bad = 0;
  const std::size_t configs = 1000;
  for (std::size_t k = 0; k < configs; ++k) {
    const auto n = static_cast<std::uint32_t>(30 + uniform_below(rng, 1971));
    const auto m = static_cast<std::uint32_t>(1 + uniform_below(rng, 3));
    const double d = -static_cast<double>(m) + 0.25 * static_cast<double>(1 + uniform_below(rng, 4 * m + 8));
    const auto late = static_cast<std::uint32_t>(1 + uniform_below(rng, 24));
    const EvolvingGraph g = grow(GrowthConfig{n, m, DeltaSchedule::constant(d, n), rng()});
    const Rational q = exact_rational(d);
    const auto r = likelihood_ratio<Rational>(g, n - late, q, q);
    if (r.l != Rational(1) || r.s != Rational(1)) ++bad;
  }
  return {bad == 0, "configs=" + std::to_string(configs) + " violations=" + std::to_string(bad)};
}

Outcome mean_gap_scaling() {
  const std::vector<std::uint32_t> ns{10000, 40000, 160000};
  const std::size_t reps = 1000;
  std::vector<double> xs;
  std::vector<double> gaps;
  std::vector<double> sds;
  std::vector<std::string> rows;
  for (std::size_t a = 0; a < ns.size(); ++a) {
    const std::uint32_t n = ns[a];
    const auto h0 = sample_min_degree(n, kM, DeltaSchedule::constant(kDelta, n), reps, derive_seed(0xC5, 2 * a));
    const auto h1 = sample_min_degree(n, kM, DeltaSchedule::change_at(kDelta, kDeltaPrime, tau_from_gamma(n, 0.6)),
                                      reps, derive_seed(0xC5, 2 * a + 1));
    xs.push_back(n);
    gaps.push_back(std::abs(mean_of(h1) - mean_of(h0)));
    sds.push_back(sd_of(h0));
    rows.push_back(std::to_string(n) + ',' + fmt("%.6g", mean_of(h0)) + ',' + fmt("%.6g", mean_of(h1)) + ',' +
                   fmt("%.6g", sds.back()) + ',' + fmt("%.6g", sd_of(h1)));
  }
  write_csv("scaling.csv", "n,mean_h0,mean_h1,sd_h0,sd_h1", rows);
  const double gap_slope = loglog_slope(xs, gaps);
  const double sd_slope = loglog_slope(xs, sds);
  return {gap_slope >= 0.45 && gap_slope <= 0.75 && sd_slope >= 0.35 && sd_slope <= 0.65,
          fmt("gap exponent=%.3f", gap_slope) + fmt(" sd exponent=%.3f", sd_slope)};
}

Outcome phase_transition() {
  const std::uint32_t n = 100000;
  const double alpha = 0.05;
  const Thresholds t = calibrate_threshold(n, kM, kDelta, alpha, 2000, 0xC6);
  const PowerReport strong = estimate_power(n, kM, kDelta, kDeltaPrime, tau_from_gamma(n, 0.75), t, 400, 0xC61);
  const PowerReport weak = estimate_power(n, kM, kDelta, kDeltaPrime, tau_from_gamma(n, 0.25), t, 400, 0xC62);
  write_csv("power.csv", "n,m,delta,delta_prime,gamma,Delta,alpha,reps,power,ci_lo,ci_hi",
            {std::to_string(n) + ",2,0,2,0.75," + std::to_string(strong.distance) + ",0.05,400," +
                 fmt("%.6g", strong.power) + ',' + fmt("%.6g", strong.ci.lo) + ',' + fmt("%.6g", strong.ci.hi),
             std::to_string(n) + ",2,0,2,0.25," + std::to_string(weak.distance) + ",0.05,400," +
                 fmt("%.6g", weak.power) + ',' + fmt("%.6g", weak.ci.lo) + ',' + fmt("%.6g", weak.ci.hi)});

  // Empirical TV lower bound at gamma = 0.25 for two sizes.
  const std::size_t tv_reps = 2000;
  std::vector<double> tv;
  for (std::uint32_t size : {10000U, 100000U}) {
    const auto h0 = sample_min_degree(size, kM, DeltaSchedule::constant(kDelta, size), tv_reps, derive_seed(0xC63, size));
    const auto h1 = sample_min_degree(size, kM, DeltaSchedule::change_at(kDelta, kDeltaPrime, tau_from_gamma(size, 0.25)),
                                      tv_reps, derive_seed(0xC64, size));
    tv.push_back(tv_lower_bound(h0, h1));
  }
  // Two-sample KS 95% band.
  const double band = 1.358 * std::sqrt(2.0 / static_cast<double>(tv_reps));
  const bool tv_ok = tv[1] <= tv[0] + band;
  return {strong.power >= 0.9 && weak.power <= 0.15 && tv_ok,
          fmt("power(0.75)=%.3f", strong.power) + fmt(" power(0.25)=%.3f", weak.power) +
              fmt(" | tv 1e4=%.4f", tv[0]) + fmt(" 1e5=%.4f", tv[1]) + fmt(" band=%.4f", band)};
}

Outcome variance_scaling() {
  const std::uint32_t n = 100000;
  const std::vector<std::uint32_t> late{250, 500, 1000, 2000};
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::string> rows;
  for (std::size_t a = 0; a < late.size(); ++a) {
    const ConditionalSetup setup{n, late[a], kM, kDelta, kDeltaPrime};
    const auto result = variance_of_S(setup, 40, 1000, derive_seed(0xC7, a));
    std::vector<double> v;
    for (const auto& r : result) {
      v.push_back(r.var_s);
      rows.push_back(std::to_string(n) + ',' + std::to_string(late[a]) + ',' + std::to_string(r.prefix_id) + ',' +
                     fmt("%.8g", r.var_s) + ',' + std::to_string(r.cont_reps));
    }
    xs.push_back(late[a]);
    ys.push_back(mean_of(v));
  }
  write_csv("varS.csv", "n,N,prefix_id,var_S,cont_reps", rows);
  const double slope = loglog_slope(xs, ys);
  return {slope >= -1.3 && slope <= -0.7, fmt("slope=%.3f", slope) + " (40 prefixes x 1000 continuations)"};
}

Outcome dominance() {
  const std::uint32_t n = 100000;
  const std::uint32_t late = 1000;
  const std::size_t samples = 100000;
  bool ok = true;
  std::string detail;
  std::vector<std::string> rows;
  for (std::uint32_t m : {1U, 2U}) {
    const ConditionalSetup setup{n, late, m, kDelta, kDelta};
    const auto comps = component_size_samples(setup, samples, 100, derive_seed(0xC8, 2 * m));
    const TreeSamples tree = tree_size_samples(OffspringLaw(m, late, n), samples, derive_seed(0xC8, 2 * m + 1));
    std::size_t violations = 0;
    double worst = -1.0;
    for (const auto& r : dominance_table(comps, tree.sizes, 10)) {
      const double joint = std::sqrt(r.se_component * r.se_component + r.se_tree * r.se_tree);
      if (r.ccdf_component > r.ccdf_tree + 2 * joint) ++violations;
      if (r.k >= 2 && r.ccdf_tree > r.bound + 3 * r.se_tree) ++violations;
      worst = std::max(worst, r.ccdf_component - r.ccdf_tree);
      if (m == 2) {
        rows.push_back(std::to_string(r.k) + ',' + fmt("%.8g", r.ccdf_component) + ',' + fmt("%.8g", r.ccdf_tree) +
                       ',' + fmt("%.8g", r.bound) + ',' + fmt("%.8g", r.se_component) + ',' + fmt("%.8g", r.se_tree));
      }
    }
    ok = ok && violations == 0 && tree.overflows == 0;
    detail += "m=" + std::to_string(m) + " violations=" + std::to_string(violations) +
              fmt(" max(comp-tree)=%.5f", worst) + (m == 1 ? " | " : "");
  }
  write_csv("dominance.csv", "k,ccdf_component,ccdf_tree,bound,se_component,se_tree", rows);
  return {ok, detail};
}

Outcome bounded_differences() {
  const BoundedDifferenceReport r = bounded_difference_check({10000, 100, kM, kDelta, kDeltaPrime}, 10000, 0xC9);
  return {r.holds() && r.trials == 10000, "trials=" + std::to_string(r.trials) +
                                              " untouched mismatches=" + std::to_string(r.untouched_mismatches) +
                                              fmt(" max=%.4f", r.max_normalized) + fmt(" bound=%.1f", r.bound)};
}

Outcome estimator_rate() {
  const std::vector<std::uint32_t> ns{10000, 40000, 160000};
  std::vector<double> grid;
  for (int k = 5; k <= 15; ++k) grid.push_back(k * 0.05);
  grid.push_back(1.0);
  std::vector<double> medians;
  std::vector<std::string> rows;
  for (std::size_t a = 0; a < ns.size(); ++a) {
    const std::uint32_t n = ns[a];
    const CalibrationCurve curve =
        build_calibration_curve(n, kM, kDelta, kDeltaPrime, grid, 200, derive_seed(0xCA, 2 * a));
    const std::uint64_t tau = n / 2;
    const std::uint64_t base = derive_seed(0xCA, 2 * a + 1);
    std::vector<double> scaled;
    for (std::size_t r = 0; r < 400; ++r) {
      const EvolvingGraph g =
          grow(GrowthConfig{n, kM, DeltaSchedule::change_at(kDelta, kDeltaPrime, tau), derive_seed(base, r)});
      const std::uint64_t hat = estimate_changepoint(g, curve);
      const std::uint64_t err = hat > tau ? hat - tau : tau - hat;
      scaled.push_back(static_cast<double>(err) / std::sqrt(static_cast<double>(n)));
      rows.push_back(std::to_string(n) + ',' + std::to_string(tau) + ',' + std::to_string(hat) + ',' +
                     std::to_string(err));
    }
    medians.push_back(median_of(scaled));
  }
  write_csv("estimator.csv", "n,tau,tau_hat,abs_err", rows);
  const double hi = *std::max_element(medians.begin(), medians.end());
  const double lo = *std::min_element(medians.begin(), medians.end());
  const bool ok = lo > 0.0 && hi / lo <= 3.0;
  return {ok, fmt("median |err|/sqrt(n): %.3f", medians[0]) + fmt(", %.3f", medians[1]) + fmt(", %.3f", medians[2]) +
                  fmt(" ratio=%.2f", lo > 0.0 ? hi / lo : INFINITY)};
}

Outcome second_moment() {
  std::vector<double> means;
  std::string detail;
  for (std::uint32_t n : {10000U, 100000U}) {
    const auto late = static_cast<std::uint32_t>(std::llround(10.0 * std::sqrt(static_cast<double>(n))));
    const ConditionalSetup setup{n, late, kM, kDelta, kDelta};
    const auto sizes = component_size_samples(setup, 20000, 100, derive_seed(0xCB, n));
    double sum = 0.0;
    for (auto s : sizes) sum += static_cast<double>(s) * s;
    means.push_back(sum / static_cast<double>(sizes.size()));
    detail += "n=" + std::to_string(n) + " N=" + std::to_string(late) + fmt(" E|C|^2=%.4f ", means.back());
  }
  const double ratio = std::max(means[0], means[1]) / std::min(means[0], means[1]);
  return {ratio <= 2.0, detail + fmt("ratio=%.3f", ratio)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    g_out_dir = argv[1];
    std::filesystem::create_directories(g_out_dir);
  }
  OracleTotals oracle;
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double time_limit = 0.0;  // seconds, 0 for none
  };
  const std::vector<Criterion> criteria{
      {"encoding exactness", encoding_exactness, 60.0},
      {"LR oracle equivalence",
       [&] {
         oracle = oracle_grid();
         return lr_equivalence(oracle);
       },
       300.0},
      {"martingale property", [&] { return martingale(oracle); }},
      {"null identity", null_identity},
      {"mean-gap scaling", mean_gap_scaling},
      {"phase transition", phase_transition},
      {"Var[S] = O(1/N)", variance_scaling},
      {"dominance and tails", dominance},
      {"bounded differences", bounded_differences},
      {"estimator rate", estimator_rate},
      {"second-moment stability", second_moment},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[k].time_limit > 0.0 && secs > criteria[k].time_limit) {
      o.pass = false;
      o.detail += fmt(" | over time limit %.0fs", criteria[k].time_limit);
    }
    std::printf("criterion %2zu %s  %-24s %s  [%.1fs]\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
