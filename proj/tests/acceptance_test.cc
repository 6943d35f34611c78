// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "taur/cli.h"
#include "taur/fairness.h"
#include "taur/jtpc.h"
#include "taur/oracles.h"
#include "taur/qtsl.h"
#include "taur/simkit.h"
#include "taur/ts_policy.h"

namespace taur {
namespace {

using Rng = std::mt19937_64;

// Pinned tolerances and budgets.
constexpr double kSimplexTol = 1e-12;
constexpr double kKktTol = 1e-9;
constexpr double kGridTol = 1e-6;
constexpr double kMonotoneTol = 1e-12;
constexpr double kBudgetTol = 1e-6;
constexpr double kMinBudget = 1e-3;
constexpr double kFairTol = 1e-3;
constexpr double kFairWeightTol = 1e-3;
constexpr double kDerivativeRelTol = 1e-6;
constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kConcavityTol = 1e-8;
constexpr double kQtslFraction = 0.95;
constexpr double kTimeLimit1 = 10.0;
constexpr double kTimeLimit2 = 60.0;
constexpr double kTimeLimit3 = 60.0;
constexpr double kTimeLimit5 = 30.0;

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
double LogUniform(Rng& rng, double lo, double hi) {
  return std::exp(Uniform(rng, std::log(lo), std::log(hi)));
}
UtilityProfile LogProfile(const std::vector<double>& a) {
  UtilityProfile u;
  for (double x : a) u.push_back(MakeLogUtility(x));
  return u;
}
LinkBudget GapLink() {
  LinkBudget link;
  link.snr_gap_db = 8.2;
  return link;
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

Verdict Criterion1() {
  Timer timer;
  Rng rng(1);
  double worst_sum = 0.0;
  double worst_kkt = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const int n = UniformInt(rng, 1, 8);
    std::vector<double> c(n), a(n);
    for (int i = 0; i < n; ++i) {
      c[i] = Uniform(rng, 0.0, 8.0);
      a[i] = LogUniform(rng, 0.1, 10.0);
    }
    const UtilityProfile u = LogProfile(a);
    const TsAllocation alloc = AllocateTs(c, u);
    worst_sum = std::max(worst_sum, std::abs(alloc.shares.Sum() - 1.0));
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < n; ++i) {
      const double m = MarginalShare(*u[i], c[i], alloc.shares[i]);
      if (alloc.shares[i] > 0.0) {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      } else {
        worst_kkt = std::max(worst_kkt, m - alloc.solve.lambda);
      }
    }
    worst_kkt = std::max(worst_kkt, hi - lo);
  }
  const double t = timer.Seconds();
  return {worst_sum <= kSimplexTol && worst_kkt <= kKktTol && t < kTimeLimit1,
          Fmt("max |sum-1| %.2e, max active marginal gap %.2e, %.2f s", worst_sum, worst_kkt, t)};
}

Verdict Criterion2() {
  Timer timer;
  Rng rng(2);
  double worst_below_grid = -1e300;
  double worst_refined = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = UniformInt(rng, 2, 3);
    std::vector<double> c(n), a(n);
    for (int i = 0; i < n; ++i) {
      c[i] = Uniform(rng, 0.05, 6.0);
      a[i] = LogUniform(rng, 0.1, 10.0);
    }
    const UtilityProfile u = LogProfile(a);
    const std::vector<double> ones(n, 1.0);
    const double value = TaurContribution(AllocateTs(c, u).shares, c, u);
    const double grid = oracle::GridSearchSimplex(c, u, ones, 1e-3).value;
    const double refined = oracle::RefinedSimplexSearch(c, u, ones, 1e-3, 1e-7).value;
    worst_below_grid = std::max(worst_below_grid, grid - value);
    worst_refined = std::max(worst_refined, std::abs(value - refined));
  }
  const double t = timer.Seconds();
  return {worst_below_grid <= kGridTol && worst_refined <= kGridTol && t < kTimeLimit2,
          Fmt("max(grid - ts) %.2e, max |ts - refined grid| %.2e, %.2f s", worst_below_grid,
              worst_refined, t)};
}

Verdict Criterion3() {
  Timer timer;
  Rng rng(3);
  const LinkBudget link = GapLink();
  int mismatches = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = UniformInt(rng, 1, 4);
    const int slots = UniformInt(rng, 1, 6);
    const int bits = UniformInt(rng, 1, 3);
    std::vector<double> snr(n), a(n);
    for (int i = 0; i < n; ++i) {
      snr[i] = Uniform(rng, 0.0, 20.0);
      a[i] = LogUniform(rng, 0.1, 10.0);
    }
    const ChannelModel model = ChannelModel::FromSnrDb(snr, link);
    const std::vector<Quantizer> q = MakeQuantizers(model, bits);
    const ExpectedUtilityTable table(model, LogProfile(a), q, link, slots);
    StateVector s;
    for (int i = 0; i < n; ++i) s.states.push_back(UniformInt(rng, 1, 1 << bits));
    const double greedy = QtslObjective(s, GreedyAllocate(s, table), table);
    const double exact = QtslObjective(s, ExhaustiveAllocate(s, table), table);
    if (greedy != exact) ++mismatches;
  }
  const double t = timer.Seconds();
  return {mismatches == 0 && t < kTimeLimit3,
          Fmt("%.0f of 100 instances differ, %.2f s", mismatches, t)};
}

Verdict Criterion4() {
  Timer timer;
  Rng rng(4);
  const LinkBudget link = GapLink();
  double worst_step = 0.0;
  double worst_residual = 0.0;
  double worst_vs_ts = -1e300;
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> snr = {Uniform(rng, 0.0, 20.0), Uniform(rng, 0.0, 20.0)};
    const UtilityProfile u = LogProfile({LogUniform(rng, 0.1, 10.0), LogUniform(rng, 0.1, 10.0)});
    const ChannelModel model = ChannelModel::FromSnrDb(snr, link);
    std::vector<NetworkGain> samples;
    for (int t = 0; t < 200; ++t) samples.push_back(SampleGains(model, 400 + k, t));
    // Constant-power TS on the same samples; its average energies become the
    // budgets so the TS point is feasible.
    double ts = 0.0;
    std::vector<double> budgets(2, 0.0);
    for (const NetworkGain& g : samples) {
      const std::vector<double> c = AchievableRates(g, link);
      const TsAllocation a = AllocateTs(c, u);
      ts += TaurContribution(a.shares, c, u) / samples.size();
      for (int i = 0; i < 2; ++i) budgets[i] += link.transmit_power * a.shares[i] / samples.size();
    }
    // A user that TS never serves would get a zero budget; any positive floor
    // keeps the TS point feasible.
    for (double& b : budgets) b = std::max(b, kMinBudget);
    const JtpcResult r = JtpcSolve(samples, u, budgets, link);
    const auto& obj = r.trace.objective;
    for (std::size_t j = 1; j < obj.size(); ++j) worst_step = std::max(worst_step, obj[j - 1] - obj[j]);
    const std::vector<double> used = r.policy.AverageEnergy();
    for (int i = 0; i < 2; ++i) worst_residual = std::max(worst_residual, std::abs(used[i] - budgets[i]));
    worst_vs_ts = std::max(worst_vs_ts, ts - obj.back());
  }
  return {worst_step <= kMonotoneTol && worst_residual <= kBudgetTol && worst_vs_ts <= 0.0,
          Fmt("max decrease %.2e, max budget residual %.2e, max(TS - JTPC) %.2e, %.2f s",
              worst_step, worst_residual, worst_vs_ts, timer.Seconds())};
}

ExperimentConfig Fig2(Policy policy, double a) {
  ExperimentConfig c;
  c.users = 8;
  c.mean_snr_db = 10.0;
  c.snr_gap_db = 8.2;
  c.concavity = a;
  c.policy = policy;
  c.frames = 10000;
  c.seed = 5;
  return c;
}

Verdict Criterion5() {
  Timer timer;
  const std::vector<double> as = {0.1, 1.0, 10.0};
  std::vector<SimStats> ts, gs;
  for (double a : as) {
    ts.push_back(RunExperiment(Fig2(Policy::kTs, a)));
    gs.push_back(RunExperiment(Fig2(Policy::kGs, a)));
  }
  bool pass = ts[0].MeanRateStd() < ts[1].MeanRateStd() && ts[1].MeanRateStd() < ts[2].MeanRateStd();
  pass = pass && gs[2].MeanRate() >= ts[2].MeanRate();
  for (int k = 0; k < 3; ++k) pass = pass && gs[k].MeanRate() >= ts[k].MeanRate();
  const double t = timer.Seconds();
  std::string detail = Fmt("TS std %.4f < %.4f < %.4f; ", ts[0].MeanRateStd(), ts[1].MeanRateStd(),
                           ts[2].MeanRateStd());
  detail += Fmt("GS(A=10) mean %.5f >= TS(A=10) %.5f; GS(A=0.1) %.5f (info); ", gs[2].MeanRate(),
                ts[2].MeanRate(), gs[0].MeanRate());
  detail += Fmt("%.2f s", t);
  return {pass && t < kTimeLimit5, detail};
}

Verdict Criterion6() {
  Timer timer;
  auto gain = [](double snr) {
    ExperimentConfig c;
    c.users = 2;
    c.mean_snr_db = snr;
    c.concavity = 0.1;
    c.frames = 2000;
    c.training_samples = 1000;
    c.seed = 6;
    const double ts = RunExperiment(c).taur;
    c.policy = Policy::kJtpc;
    const double jtpc = RunExperiment(c).taur;
    return (jtpc - ts) / ts;
  };
  const double g0 = gain(0.0), g5 = gain(5.0), g25 = gain(25.0), g30 = gain(30.0);
  return {std::max(g25, g30) < std::min(g0, g5),
          Fmt("relative gain 0/5 dB %.4f/%.4f, 25/30 dB %.4f/%.4f", g0, g5, g25, g30) +
              Fmt(", %.2f s", timer.Seconds())};
}

Verdict Criterion7() {
  Timer timer;
  auto run = [](Policy p, int users, int slots, int bits) {
    ExperimentConfig c;
    c.users = users;
    c.mean_snr_db = 10.0;
    c.concavity = 0.1;
    c.policy = p;
    c.slots = slots;
    c.feedback_bits = bits;
    c.frames = 10000;
    c.seed = 7;
    return RunExperiment(c).taur;
  };
  const double ts8 = run(Policy::kTs, 8, 8, 3);
  const double q1 = run(Policy::kQtsl, 8, 8, 1);
  const double q2 = run(Policy::kQtsl, 8, 8, 2);
  const double q3 = run(Policy::kQtsl, 8, 8, 3);
  const double q84 = run(Policy::kQtsl, 8, 4, 3);
  const double ts4 = run(Policy::kTs, 4, 4, 3);
  const bool pass = q3 >= kQtslFraction * ts8 && q1 <= q2 && q2 <= q3 && q84 > ts4;
  return {pass, Fmt("Q(M=3)/TS = %.4f; TAUR M=1,2,3: %.4f %.4f %.4f", q3 / ts8, q1, q2, q3) +
                    Fmt("; Q(N=8,L=4) %.4f > TS(N=4) %.4f, %.2f s", q84, ts4, timer.Seconds())};
}

Verdict Criterion8() {
  Timer timer;
  const LinkBudget link = GapLink();
  const std::vector<double> snr = {0.0, 10.0};
  const ChannelModel model = ChannelModel::FromSnrDb(snr, link);
  const UtilityProfile u = LogProfile({0.1, 0.1});
  FairnessOptions options;
  options.tolerance = kFairTol;
  options.max_iterations = 50;
  const FairnessResult f = AdaptWeights(model, u, link, options);
  const auto rates = SampleRateSet(model, link, options.seed, options.sample_budget);
  const std::vector<double> w = oracle::BisectFairWeights(rates, u, 1e-10);
  const double diff = std::abs(f.report.average_utility[0] - f.report.average_utility[1]);
  const double wdiff = std::abs(w[0] - f.weights.weights[0]);
  return {diff <= kFairTol && f.report.iterations <= 50 && wdiff <= kFairWeightTol,
          Fmt("|E[U1]-E[U2]| %.2e after %.0f iterations, |w - bisection w| %.2e, %.2f s", diff,
              f.report.iterations, wdiff, timer.Seconds())};
}

Verdict Criterion9() {
  Timer timer;
  Rng rng(9);
  const LinkBudget link = GapLink();
  double worst_rel = 0.0;
  for (int k = 0; k < 100; ++k) {
    const LogUtility u(LogUniform(rng, 0.1, 10.0));
    const double gain = LogUniform(rng, 0.1, 100.0);
    const double share = Uniform(rng, 0.05, 1.0);
    const double energy = Uniform(rng, 0.01, 2.0);
    const double rate = Uniform(rng, 0.05, 6.0);
    const double h = kFiniteDifferenceStep;
    auto rel = [](double analytic, double numeric) {
      return std::abs(analytic - numeric) / std::max(std::abs(numeric), 1e-300);
    };
    worst_rel = std::max(worst_rel, rel(MarginalEnergy(u, share, energy, gain, link),
                                        oracle::CentralDifference(
                                            [&](double s) { return EnergyUtility(u, share, s, gain, link); },
                                            energy, h)));
    worst_rel = std::max(worst_rel, rel(MarginalShareAtEnergy(u, share, energy, gain, link),
                                        oracle::CentralDifference(
                                            [&](double p) { return EnergyUtility(u, p, energy, gain, link); },
                                            share, h)));
    worst_rel = std::max(worst_rel, rel(MarginalShare(u, rate, share),
                                        oracle::CentralDifference(
                                            [&](double p) { return u.Value(p * rate); }, share, h)));
  }
  double worst_second = -1e300;
  for (int k = 0; k < 1000; ++k) {
    const LogUtility u(LogUniform(rng, 0.1, 10.0));
    const double gain = LogUniform(rng, 0.1, 100.0);
    const double share = Uniform(rng, 0.05, 1.0);
    const double energy = Uniform(rng, 0.01, 2.0);
    const double theta = Uniform(rng, 0.0, 2.0 * std::numbers::pi);
    worst_second = std::max(
        worst_second,
        oracle::DirectionalSecondDifference(
            [&](double p, double s) { return EnergyUtility(u, p, s, gain, link); }, share, energy,
            std::cos(theta), std::sin(theta), 1e-3));
  }
  return {worst_rel <= kDerivativeRelTol && worst_second <= kConcavityTol,
          Fmt("max relative derivative error %.2e, max second difference %.2e, %.2f s", worst_rel,
              worst_second, timer.Seconds())};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int RunCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"taur_sim"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
}

Verdict Criterion10() {
  Timer timer;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("taur_acceptance_" + std::to_string(getpid()));
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> invocations = {
      {"ts-sweep", "--set", "users=8,16,24,32", "--set", "frames=500"},
      {"gs-sweep", "--set", "concavity=0.1,1,10", "--set", "frames=500", "--jobs", "3"},
      {"qtsl", "--set", "feedback_bits=1,2,3", "--set", "frames=300"},
      {"jtpc", "--set", "users=2", "--set", "mean_snr_db=0:30:15", "--set", "frames=200",
       "--set", "training_samples=150"},
      {"fairness", "--set", "users=2", "--set", "user_snr_db=0 10", "--set",
       "training_samples=1000"},
  };
  int identical = 0;
  std::string failures;
  for (std::size_t k = 0; k < invocations.size(); ++k) {
    const std::string name = "run" + std::to_string(k);
    auto with_out = [&](const fs::path& dir) {
      std::vector<std::string> args = invocations[k];
      args.insert(args.end(), {"--out", dir.string(), "--name", name});
      return args;
    };
    const bool ok1 = RunCli(with_out(root / "first")) == 0;
    const bool ok2 = RunCli(with_out(root / "second")) == 0;
    const bool ok3 = RunCli({"replay", (root / "first" / (name + ".manifest")).string(), "--out",
                             (root / "replay").string()}) == 0;
    const std::string a = Slurp(root / "first" / (name + ".csv"));
    const std::string b = Slurp(root / "second" / (name + ".csv"));
    const std::string c = Slurp(root / "replay" / (name + ".csv"));
    if (ok1 && ok2 && ok3 && !a.empty() && a == b && a == c) {
      ++identical;
    } else {
      failures += " " + invocations[k].front();
    }
  }
  fs::remove_all(root);
  return {identical == static_cast<int>(invocations.size()),
          Fmt("%.0f of %.0f invocations byte-identical across rerun and replay", identical,
              invocations.size()) +
              (failures.empty() ? "" : "; failed:" + failures) + Fmt(", %.2f s", timer.Seconds())};
}

}  // namespace
}  // namespace taur

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<taur::Verdict()> run;
  };
  const std::vector<Entry> criteria = {
      {1, "simplex + KKT on 1e4 random frames", taur::Criterion1},
      {2, "TS equals the simplex grid oracle", taur::Criterion2},
      {3, "greedy equals exhaustive allocation", taur::Criterion3},
      {4, "Gauss-Seidel monotone and feasible", taur::Criterion4},
      {5, "rate mean / spread tradeoff across A", taur::Criterion5},
      {6, "JTPC gain shrinks at high SNR", taur::Criterion6},
      {7, "QTSL trends", taur::Criterion7},
      {8, "max-min fair weights", taur::Criterion8},
      {9, "analytic derivatives and concavity", taur::Criterion9},
      {10, "CLI determinism", taur::Criterion10},
  };
  int failed = 0;
  for (const Entry& e : criteria) {
    taur::Verdict v;
    try {
      v = e.run();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", e.id, e.title, v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
