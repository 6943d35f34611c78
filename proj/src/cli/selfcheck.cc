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

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "taur/cli.h"
#include "taur/jtpc.h"
#include "taur/oracles.h"
#include "taur/qtsl.h"
#include "taur/ts_policy.h"

namespace taur::cli {
namespace {

using Rng = std::mt19937_64;

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double LogUniform(Rng& rng, double lo, double hi) {
  return std::exp(Uniform(rng, std::log(lo), std::log(hi)));
}

std::string List(const std::vector<double>& v) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
  return s.str();
}

UtilityProfile LogProfile(const std::vector<double>& a) {
  UtilityProfile u;
  for (double x : a) u.push_back(MakeLogUtility(x));
  return u;
}

struct SuiteResult {
  int instances = 0;
  int failures = 0;
};

void Report(std::ostream& out, const char* suite, std::uint64_t seed, int instance,
            const std::string& why, const std::string& inputs) {
  out << "  FAIL " << suite << " instance " << instance << ": " << why << '\n'
      << "    inputs: " << inputs << '\n'
      << "    replay: taur_sim selfcheck --suite " << suite << " --seed " << seed << '\n';
}

// Optimal time sharing against a simplex grid search refined to 1e-7.
SuiteResult TsSuite(std::uint64_t seed, std::ostream& out) {
  Rng rng(seed);
  SuiteResult r;
  for (int k = 0; k < 20; ++k, ++r.instances) {
    const int n = UniformInt(rng, 2, 3);
    std::vector<double> rates(n), a(n);
    for (int i = 0; i < n; ++i) {
      rates[i] = Uniform(rng, 0.05, 6.0);
      a[i] = LogUniform(rng, 0.1, 10.0);
    }
    const UtilityProfile u = LogProfile(a);
    const std::vector<double> ones(n, 1.0);
    const TsAllocation alloc = AllocateTs(rates, u);
    const double value = oracle::WeightedUtility(alloc.shares.shares, rates, u, ones);
    const double grid = oracle::GridSearchSimplex(rates, u, ones, 1e-3).value;
    const double refined = oracle::RefinedSimplexSearch(rates, u, ones, 1e-2, 1e-7).value;
    std::ostringstream why;
    why << std::setprecision(17);
    if (std::abs(alloc.shares.Sum() - 1.0) > 1e-12) why << "shares sum " << alloc.shares.Sum();
    else if (value < grid - 1e-12) why << "below grid: " << value << " < " << grid;
    else if (std::abs(value - refined) > 1e-6) why << "off refined oracle: " << value << " vs " << refined;
    else continue;
    ++r.failures;
    Report(out, "ts", seed, k, why.str(), "rates=" + List(rates) + " A=" + List(a));
  }
  return r;
}

// Greedy slot allocation against exhaustive enumeration; exact equality.
SuiteResult GreedySuite(std::uint64_t seed, std::ostream& out) {
  Rng rng(seed);
  SuiteResult r;
  LinkBudget link;
  link.snr_gap_db = 8.2;
  for (int k = 0; k < 20; ++k, ++r.instances) {
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
    const UtilityProfile u = LogProfile(a);
    const ExpectedUtilityTable table(model, u, q, link, slots);
    StateVector states;
    std::vector<double> state_values;
    for (int i = 0; i < n; ++i) {
      states.states.push_back(UniformInt(rng, 1, 1 << bits));
      state_values.push_back(states.states.back());
    }
    const double greedy = QtslObjective(states, GreedyAllocate(states, table), table);
    const double exact = QtslObjective(states, ExhaustiveAllocate(states, table), table);
    if (greedy == exact) continue;
    ++r.failures;
    std::ostringstream why;
    why << std::setprecision(17) << "greedy " << greedy << " != exhaustive " << exact;
    Report(out, "greedy", seed, k, why.str(),
           "snr_db=" + List(snr) + " A=" + List(a) + " slots=" + std::to_string(slots) +
               " bits=" + std::to_string(bits) + " states=" + List(state_values));
  }
  return r;
}

bool RelClose(double analytic, double numeric, double tol) {
  return std::abs(analytic - numeric) <= tol * std::max(1.0, std::abs(numeric));
}

// Analytic marginals against centered differences, and joint concavity of
// U(rho log(1 + s k / rho)) along random directions.
SuiteResult DerivativeSuite(std::uint64_t seed, std::ostream& out) {
  Rng rng(seed);
  SuiteResult r;
  LinkBudget link;
  link.snr_gap_db = 8.2;
  for (int k = 0; k < 100; ++k, ++r.instances) {
    const double a = LogUniform(rng, 0.1, 10.0);
    const double gain = LogUniform(rng, 0.1, 100.0);
    const double share = Uniform(rng, 0.05, 1.0);
    const double energy = Uniform(rng, 0.01, 2.0);
    const double rate = Uniform(rng, 0.05, 6.0);
    const LogUtility u(a);
    const double h = 1e-5;

    const double me = MarginalEnergy(u, share, energy, gain, link);
    const double me_fd = oracle::CentralDifference(
        [&](double s) { return EnergyUtility(u, share, s, gain, link); }, energy, h);
    const double ms = MarginalShareAtEnergy(u, share, energy, gain, link);
    const double ms_fd = oracle::CentralDifference(
        [&](double p) { return EnergyUtility(u, p, energy, gain, link); }, share, h);
    const double mc = MarginalShare(u, rate, share);
    const double mc_fd = oracle::CentralDifference(
        [&](double p) { return u.Value(p * rate); }, share, h);

    const double theta = Uniform(rng, 0.0, 2.0 * 3.14159265358979323846);
    const double second = oracle::DirectionalSecondDifference(
        [&](double p, double s) { return EnergyUtility(u, p, s, gain, link); }, share,
        energy, std::cos(theta), std::sin(theta), 1e-3);

    std::ostringstream why;
    why << std::setprecision(17);
    if (!RelClose(me, me_fd, 1e-6)) why << "marginal energy " << me << " vs " << me_fd;
    else if (!RelClose(ms, ms_fd, 1e-6)) why << "marginal share (energy) " << ms << " vs " << ms_fd;
    else if (!RelClose(mc, mc_fd, 1e-6)) why << "marginal share " << mc << " vs " << mc_fd;
    else if (second > 1e-8) why << "second difference " << second << " > 1e-8";
    else continue;
    ++r.failures;
    std::ostringstream inputs;
    inputs << std::setprecision(17) << "A=" << a << " gain=" << gain << " share=" << share
           << " energy=" << energy << " rate=" << rate << " theta=" << theta;
    Report(out, "derivatives", seed, k, why.str(), inputs.str());
  }
  return r;
}

// Gauss-Seidel on small two-user sample sets: nondecreasing objective and
// budgets met at termination.
SuiteResult JtpcSuite(std::uint64_t seed, std::ostream& out) {
  Rng rng(seed);
  SuiteResult r;
  LinkBudget link;
  link.snr_gap_db = 8.2;
  for (int k = 0; k < 3; ++k, ++r.instances) {
    const std::vector<double> snr = {Uniform(rng, 0.0, 20.0), Uniform(rng, 0.0, 20.0)};
    const std::vector<double> a = {LogUniform(rng, 0.1, 10.0), LogUniform(rng, 0.1, 10.0)};
    const std::uint64_t sample_seed = rng();
    const ChannelModel model = ChannelModel::FromSnrDb(snr, link);
    std::vector<NetworkGain> samples;
    for (int t = 0; t < 100; ++t) samples.push_back(SampleGains(model, sample_seed, t));
    const std::vector<double> budgets = {0.5, 0.5};
    std::ostringstream why;
    why << std::setprecision(17);
    try {
      const JtpcResult res = JtpcSolve(samples, LogProfile(a), budgets, link);
      const auto& obj = res.trace.objective;
      for (std::size_t j = 1; j < obj.size(); ++j) {
        if (obj[j] < obj[j - 1] - 1e-12) {
          why << "objective decreased at step " << j << ": " << obj[j - 1] << " -> " << obj[j];
          break;
        }
      }
      const std::vector<double> used = res.policy.AverageEnergy();
      for (int i = 0; i < 2 && why.str().empty(); ++i) {
        if (std::abs(used[i] - budgets[i]) > 1e-6) {
          why << "user " << i << " energy " << used[i] << " vs budget " << budgets[i];
        }
      }
    } catch (const std::exception& e) {
      why << e.what();
    }
    if (why.str().empty()) continue;
    ++r.failures;
    std::ostringstream inputs;
    inputs << "snr_db=" << List(snr) << " A=" << List(a) << " sample_seed=" << sample_seed
           << " samples=100 budgets=0.5 0.5";
    Report(out, "jtpc", seed, k, why.str(), inputs.str());
  }
  return r;
}

}  // namespace

bool RunSelfcheck(const SelfcheckOptions& options, std::ostream& out) {
  struct Suite {
    const char* name;
    SuiteResult (*run)(std::uint64_t, std::ostream&);
  };
  constexpr Suite kSuites[] = {{"ts", TsSuite},
                               {"greedy", GreedySuite},
                               {"derivatives", DerivativeSuite},
                               {"jtpc", JtpcSuite}};
  bool ok = true;
  bool matched = false;
  for (const Suite& s : kSuites) {
    if (options.suite != "all" && options.suite != s.name) continue;
    matched = true;
    const SuiteResult r = s.run(options.seed, out);
    out << (r.failures == 0 ? "PASS " : "FAIL ") << s.name << " (" << r.instances
        << " instances, " << r.failures << " failed, seed " << options.seed << ")\n";
    ok = ok && r.failures == 0;
  }
  if (!matched) throw ConfigError("selfcheck: unknown suite '" + options.suite + "'");
  return ok;
}

}  // namespace taur::cli
