// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion is exercised end to end at its stated
// tolerance and reports exactly one [PASS]/[FAIL] line; the process exits
// nonzero if any criterion fails.
#include <json.hpp>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bellbeam/dcs.hpp"
#include "bellbeam/errors.hpp"
#include "bellbeam/estimator.hpp"
#include "bellbeam/experiment.hpp"
#include "bellbeam/quantum.hpp"
#include "bellbeam/rng.hpp"
#include "bellbeam/socpes.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bellbeam;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& description,
            const std::string& detail) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion
            << ": " << description << " — " << detail << "\n";
  if (!ok) ++g_failures;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Violation-onset reproduction: sweep the Werner parameter at N=100000
//    with the default disjoint-support DCS configuration.
void criterion_1() {
  const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.707, 0.8, 1.0};
  ExperimentConfig base;
  base.trials = 100000;
  base.seed = 20260801;

  const auto start = std::chrono::steady_clock::now();
  const std::vector<SweepPoint> points = sweep_p(grid, base);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  bool ok = seconds < 60.0;
  std::string detail;
  double worst = 0.0;
  for (const SweepPoint& pt : points) {
    const double sigmas = std::abs(pt.s_abs - kTsirelson * pt.p) /
                          pt.std_error;
    worst = std::max(worst, sigmas);
    if (sigmas > 5.0) ok = false;
    if (pt.p <= 0.6 && pt.violated) ok = false;
    if (pt.p >= 0.8 && !pt.violated) ok = false;
  }
  detail = "max deviation " + fmt(worst) + " SE over 7 points, sweep took " +
           fmt(seconds) + " s";
  report(1, ok, "violation onset across the Werner sweep", detail);
}

// ---------------------------------------------------------------------------
// 2/3/6. One p=1 run and one p=0 run at N=100000 feed three criteria:
//    the maximal-entanglement value, the null value, and the structure of
//    the direct-direct 2x2 table.
void criteria_2_3_6() {
  ExperimentConfig config_p1;
  config_p1.trials = 100000;
  config_p1.seed = 20260802;
  const TrialResult run_p1 = run_trials(config_p1);

  ExperimentConfig config_p0 = config_p1;
  config_p0.state = make_werner(0.0);
  config_p0.seed = 20260803;
  const TrialResult run_p0 = run_trials(config_p0);

  const VKernel k1(config_p1.channel1), k2(config_p1.channel2);
  const ChshEstimate est_p1 = estimate_chsh(run_p1.records, k1, k2);
  const ChshEstimate est_p0 = estimate_chsh(run_p0.records, k1, k2);

  {
    const double s_abs = std::abs(est_p1.S);
    const bool ok = s_abs >= 2.79 && s_abs <= 2.87;
    report(2, ok, "maximal-entanglement value at p=1",
           "|S| = " + fmt(s_abs) + " (SE " + fmt(est_p1.std_error) +
               "), window [2.79, 2.87]");
  }
  {
    const double s_abs = std::abs(est_p0.S);
    const bool ok = s_abs <= 5.0 * est_p0.std_error && !est_p0.violated;
    report(3, ok, "uniform-mixture null at p=0",
           "|S| = " + fmt(s_abs) + " <= 5 x SE = " +
               fmt(5.0 * est_p0.std_error) + ", no violation");
  }
  {
    const auto& c1 = run_p1.counts;
    const double total =
        static_cast<double>(c1.count(SettingPair::R2T2));
    const double anti = static_cast<double>(
        c1.spin_spin(Outcome::Plus, Outcome::Minus) +
        c1.spin_spin(Outcome::Minus, Outcome::Plus));
    const double expected = (1.0 + 1.0 / std::numbers::sqrt2) / 2.0;
    const double se = std::sqrt(expected * (1.0 - expected) / total);
    bool ok = std::abs(anti / total - expected) <= 5.0 * se;

    const auto& c0 = run_p0.counts;
    const double total0 =
        static_cast<double>(c0.count(SettingPair::R2T2));
    const double sd = std::sqrt(total0 * 0.25 * 0.75);
    for (Outcome a : {Outcome::Plus, Outcome::Minus})
      for (Outcome b : {Outcome::Plus, Outcome::Minus})
        if (std::abs(static_cast<double>(c0.spin_spin(a, b)) -
                     total0 / 4.0) > 5.0 * sd)
          ok = false;
    report(6, ok, "direct-direct histogram structure",
           "anti-correlated fraction " + fmt(anti / total) + " vs " +
               fmt(expected) + " at p=1; p=0 cells flat within 5 sigma");
  }
}

// ---------------------------------------------------------------------------
// 4. Continuous-discrete oracle equivalence with an overlapping channel-II
//    pair, ten independent seeds.
void criterion_4() {
  ExperimentConfig base;
  base.trials = 100000;
  base.seed = 20260804;
  base.channel2 = DcsPair(AngularDensity({{1.0, 1.2, 0.3}}),
                          AngularDensity({{1.0, 1.8, 0.3}}),
                          "channel-II (overlapping)");
  const VKernel k1(base.channel1), k2(base.channel2);
  const MeasurementSettings s = MeasurementSettings::standard();
  const std::array<const QubitObservable*, 2> obs1{&s.r1, &s.r2};
  const std::array<const QubitObservable*, 2> obs2{&s.t1, &s.t2};

  bool ok = true;
  double worst = 0.0;
  for (int seed_index = 0; seed_index < 10; ++seed_index) {
    ExperimentConfig config = base;
    config.seed = substream_seed(base.seed, seed_index);
    const TrialResult result = run_trials(config);
    const ChshEstimate estimate = estimate_chsh(result.records, k1, k2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (i == 1 && j == 1) continue;  // all-direct term: no decoding
        const double exact = oracles::correlation_werner(
            1.0, obs1[i]->bloch(), obs2[j]->bloch());
        const TermEstimate& term = estimate.terms[2 * i + j];
        const double sigmas =
            std::abs(term.value - exact) / term.std_error;
        worst = std::max(worst, sigmas);
        if (sigmas > 5.0) ok = false;
      }
  }
  report(4, ok, "continuous terms equal Born-rule correlations "
                "(overlapping densities, 10 seeds)",
         "max deviation " + fmt(worst) + " SE");
}

// ---------------------------------------------------------------------------
// 5. Decoding identities for the default pairs and 20 randomized valid
//    pairs, by quadrature independent of the library's integrator.
void criterion_5() {
  bool ok = true;
  double worst = 0.0;
  const auto check_pair = [&](const DcsPair& pair) {
    const VKernel kernel(pair);
    for (Outcome a : {Outcome::Plus, Outcome::Minus})
      for (Outcome b : {Outcome::Plus, Outcome::Minus}) {
        const double value = oracles::simpson(
            [&](double x) {
              return pair.density(a).pdf(x) * kernel.v(x, b);
            },
            0.0, kPi, 60000);
        const double target = a == b ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(value - target));
        if (std::abs(value - target) > 1e-8) ok = false;
      }
  };

  check_pair(default_channel1());
  check_pair(default_channel2());

  SplitMix64 g(20260805);
  int accepted = 0;
  while (accepted < 20) {
    const auto random_density = [&g]() {
      const int n = 1 + static_cast<int>(g() % 3);
      std::vector<GaussianComponent> comps;
      for (int k = 0; k < n; ++k)
        comps.push_back({0.2 + 0.8 * uniform_01(g),
                         0.1 + (kPi - 0.2) * uniform_01(g),
                         0.05 + 0.35 * uniform_01(g)});
      return AngularDensity(comps);
    };
    try {
      const DcsPair pair(random_density(), random_density(), "random");
      const VKernel kernel(pair);
      (void)kernel;
      check_pair(pair);
      ++accepted;
    } catch (const IndistinguishabilityError&) {
      continue;
    }
  }
  report(5, ok, "v-kernel decoding identities (defaults + 20 random pairs)",
         "max |integral - delta_ab| = " + fmt(worst));
}

// ---------------------------------------------------------------------------
// 7. Spin-orbit matrix checks.
void criterion_7() {
  bool ok = true;
  std::string detail;

  CouplingInputs c;
  c.a = 1.0;
  c.b = 1.0;
  const auto eig = adiabats(build_six_state(c).v_so);
  const double expected[6] = {-1.0, -1.0, -1.0, -1.0, 2.0, 2.0};
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    worst = std::max(worst, std::abs(eig[i] - expected[i]));
  if (worst > 1e-10) ok = false;

  SplitMix64 g(20260806);
  double worst_trace = 0.0;
  for (int k = 0; k < 100; ++k) {
    CouplingInputs rc;
    rc.a = 10.0 * uniform_01(g) - 5.0;
    rc.b = 10.0 * uniform_01(g) - 5.0;
    worst_trace = std::max(
        worst_trace, std::abs(build_six_state(rc).v_so.matrix().trace()));
  }
  if (worst_trace > 1e-12) ok = false;

  double worst_gap = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double vs = 4.0 * uniform_01(g) - 2.0;
    const double vp = 4.0 * uniform_01(g) - 2.0;
    const double a = 4.0 * uniform_01(g) - 2.0;
    const double b = 4.0 * uniform_01(g) - 2.0;
    const auto closed = two_state_adiabats_closed_form(vs, vp, a, b);
    const auto numeric = adiabats(build_two_state(vs, vp, a, b));
    worst_gap = std::max({worst_gap, std::abs(closed[0] - numeric[0]),
                          std::abs(closed[1] - numeric[1])});
  }
  if (worst_gap > 1e-10) ok = false;

  detail = "V_so eigenvalue deviation " + fmt(worst) + ", max |trace| " +
           fmt(worst_trace) + ", closed-form gap " + fmt(worst_gap);
  report(7, ok, "spin-orbit matrix checks", detail);
}

// ---------------------------------------------------------------------------
// 8. Determinism of the CLI: identical config and seed give byte-identical
//    data files, also across different --threads values.
const std::string kCliPath = BELLBEAM_CLI_PATH;

int run_cli(const std::string& args) {
  const std::string cmd = kCliPath + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_8() {
  const fs::path dir =
      fs::temp_directory_path() / "bellbeam_acceptance" / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);

  bool ok = true;
  std::string detail = "byte-identical";

  const std::string sim_args = " --trials 30000 --seed 424242 --trial-log";
  if (run_cli("simulate --out " + (dir / "a").string() + sim_args +
              " --threads 1") != 0)
    ok = false;
  if (run_cli("simulate --out " + (dir / "b").string() + sim_args +
              " --threads 5") != 0)
    ok = false;
  for (const char* name :
       {"hist_r1t1.csv", "hist_r1t2.csv", "hist_r2t1.csv", "hist_r2t2.csv",
        "estimate.json", "trials.csv"}) {
    if (slurp(dir / "a" / name) != slurp(dir / "b" / name)) {
      ok = false;
      detail = std::string("simulate outputs differ: ") + name;
    }
  }
  {
    const json ma = json::parse(slurp(dir / "a" / "manifest.json"));
    const json mb = json::parse(slurp(dir / "b" / "manifest.json"));
    if (ma.at("outputs") != mb.at("outputs") ||
        ma.at("config") != mb.at("config")) {
      ok = false;
      detail = "manifest inventories differ";
    }
  }

  const std::string sweep_args =
      " --p-list 0,0.5,1 --trials 20000 --seed 77";
  if (run_cli("sweep --out " + (dir / "sa").string() + sweep_args +
              " --threads 1") != 0)
    ok = false;
  if (run_cli("sweep --out " + (dir / "sb").string() + sweep_args +
              " --threads 3") != 0)
    ok = false;
  for (const char* name : {"sweep.csv", "sweep.json"})
    if (slurp(dir / "sa" / name) != slurp(dir / "sb" / name)) {
      ok = false;
      detail = std::string("sweep outputs differ: ") + name;
    }

  report(8, ok, "byte-identical reruns across thread counts", detail);
}

}  // namespace

int main() {
  std::cout << "bellbeam acceptance suite\n";
  criterion_1();
  criteria_2_3_6();
  criterion_4();
  criterion_5();
  criterion_7();
  criterion_8();
  std::cout << (g_failures == 0 ? "all criteria passed\n"
                                : std::to_string(g_failures) +
                                      " criterion(s) failed\n");
  return g_failures == 0 ? 0 : 1;
}
