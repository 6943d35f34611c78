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

#include "taur/simkit.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "taur/errors.h"
#include "taur/gs_policy.h"
#include "taur/jtpc.h"
#include "taur/numerics.h"
#include "taur/qtsl.h"
#include "taur/ts_policy.h"

namespace taur {
namespace {

// Running mean and variance (Welford).
class RunningMoments {
 public:
  void Add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
  }
  double mean() const { return mean_; }
  double population_std() const {
    return count_ > 0 ? std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_))) : 0.0;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void Require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

double Average(std::span<const double> v) {
  return v.empty() ? 0.0 : Sum(v) / static_cast<double>(v.size());
}

}  // namespace

std::string_view PolicyName(Policy policy) {
  switch (policy) {
    case Policy::kTs:
      return "ts";
    case Policy::kGs:
      return "gs";
    case Policy::kJtpc:
      return "jtpc";
    case Policy::kQtsl:
      return "qtsl";
    case Policy::kWeightedTs:
      return "weighted-ts";
  }
  return "?";
}

Policy ParsePolicy(std::string_view name) {
  for (Policy p : {Policy::kTs, Policy::kGs, Policy::kJtpc, Policy::kQtsl,
                   Policy::kWeightedTs}) {
    if (name == PolicyName(p)) return p;
  }
  throw ConfigError("policy: unknown policy '" + std::string(name) +
                    "' (expected ts, gs, jtpc, qtsl or weighted-ts)");
}

void ExperimentConfig::Validate() const {
  Require(users >= 1, "users", "must be >= 1");
  Require(user_snr_db.empty() || static_cast<int>(user_snr_db.size()) == users,
          "user_snr_db", "needs one entry per user");
  Require(std::isfinite(mean_snr_db), "mean_snr_db", "must be finite");
  for (double v : user_snr_db) Require(std::isfinite(v), "user_snr_db", "must be finite");
  Require(snr_gap_db >= 0.0 && std::isfinite(snr_gap_db), "snr_gap_db", "must be >= 0");
  Require(concavity > 0.0 && std::isfinite(concavity), "concavity", "must be > 0");
  Require(user_concavity.empty() || static_cast<int>(user_concavity.size()) == users,
          "user_concavity", "needs one entry per user");
  for (double a : user_concavity) Require(a > 0.0 && std::isfinite(a), "user_concavity", "must be > 0");
  Require(alpha > 0.0 && alpha < 1.0, "alpha", "must be in (0, 1)");
  Require(gs_initial_rate >= 0.0, "gs_initial_rate", "must be >= 0");
  Require(delta > 0.0, "delta", "must be > 0");
  Require(max_gs_iterations >= 1, "max_gs_iterations", "must be >= 1");
  Require(std::isfinite(power_budget), "power_budget", "must be finite");
  Require(training_samples >= 1, "training_samples", "must be >= 1");
  Require(slots >= 1, "slots", "must be >= 1");
  Require(feedback_bits >= 0 && feedback_bits <= 16, "feedback_bits", "must be in [0, 16]");
  Require(frames >= 1, "frames", "must be >= 1");
  if (!weights.empty()) {
    Require(static_cast<int>(weights.size()) == users, "weights", "needs one entry per user");
    for (double w : weights) Require(w >= 0.0, "weights", "must be >= 0");
    Require(std::abs(Sum(weights) - 1.0) <= 1e-9, "weights", "must sum to 1");
  }
}

LinkBudget ExperimentConfig::Link() const {
  LinkBudget link;
  link.noise_power = 1.0;
  link.snr_gap_db = snr_gap_db;
  link.transmit_power = 1.0;
  return link;
}

std::vector<double> ExperimentConfig::SnrDb() const {
  return user_snr_db.empty() ? std::vector<double>(users, mean_snr_db) : user_snr_db;
}

ChannelModel ExperimentConfig::Model() const {
  const std::vector<double> snr = SnrDb();
  return ChannelModel::FromSnrDb(snr, Link());
}

UtilityProfile ExperimentConfig::Utilities() const {
  if (user_concavity.empty()) return UniformLogProfile(users, concavity);
  UtilityProfile out;
  for (double a : user_concavity) out.push_back(MakeLogUtility(a));
  return out;
}

std::vector<double> ExperimentConfig::Budgets() const {
  const double budget = power_budget > 0.0 ? power_budget : Link().transmit_power / users;
  return std::vector<double>(users, budget);
}

double SimStats::MeanRate() const { return Average(mean_rate); }
double SimStats::MeanRateStd() const { return Average(rate_std); }

std::uint64_t TrainingSeed(std::uint64_t seed) {
  return seed ^ 0x6a09e667f3bcc909ULL;
}

SimStats RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const LinkBudget link = config.Link();
  const ChannelModel model = config.Model();
  const UtilityProfile utilities = config.Utilities();
  const int n = config.users;

  // Policy state.
  std::optional<GsState> gs;
  std::vector<Quantizer> quantizers;
  std::optional<ExpectedUtilityTable> table;
  std::vector<double> multipliers;
  std::vector<double> weights = config.weights;
  switch (config.policy) {
    case Policy::kGs:
      gs = GsState::Uniform(n, config.gs_initial_rate, config.alpha);
      break;
    case Policy::kQtsl:
      quantizers = MakeQuantizers(model, config.feedback_bits);
      table.emplace(model, utilities, quantizers, link, config.slots);
      break;
    case Policy::kJtpc: {
      std::vector<NetworkGain> training;
      training.reserve(config.training_samples);
      for (int t = 0; t < config.training_samples; ++t) {
        training.push_back(SampleGains(model, TrainingSeed(config.seed), t));
      }
      JtpcOptions options;
      options.delta = config.delta;
      options.max_iterations = config.max_gs_iterations;
      const std::vector<double> budgets = config.Budgets();
      if (config.downlink) {
        const JtpcResult solved = JtpcSolveDownlink(
            training, utilities, budgets.front() * n, link, options);
        multipliers.assign(n, solved.policy.multipliers.front());
      } else {
        multipliers = JtpcSolve(training, utilities, budgets, link, options)
                          .policy.multipliers;
      }
      break;
    }
    case Policy::kWeightedTs:
      if (weights.empty()) weights.assign(n, 1.0 / n);
      break;
    case Policy::kTs:
      break;
  }

  std::vector<RunningMoments> rate_moments(n);
  std::vector<CompensatedSum> utility_sums(n), share_sums(n), energy_sums(n);
  std::vector<std::int64_t> selected(n, 0);
  CompensatedSum taur_sum;
  SimStats stats;
  stats.frames = config.frames;

  std::vector<double> shares(n), rates(n), energies(n);
  for (std::int64_t t = 0; t < config.frames; ++t) {
    try {
      const NetworkGain gains = SampleGains(model, config.seed, static_cast<std::uint64_t>(t));
      if (config.policy == Policy::kJtpc) {
        const FrameAllocation alloc =
            AllocateWithMultipliers(gains, utilities, multipliers, link);
        shares = alloc.shares;
        energies = alloc.energies;
        for (int i = 0; i < n; ++i) {
          const double power = shares[i] > 0.0 ? energies[i] / shares[i] : 0.0;
          rates[i] = AchievableRate(gains.gains[i], power, link);
          const double direct = EnergyRate(shares[i], energies[i], gains.gains[i], link);
          if (std::abs(direct - shares[i] * rates[i]) > 1e-9 * std::max(1.0, direct)) {
            throw NumericError("rate bookkeeping mismatch for user " + std::to_string(i));
          }
        }
      } else {
        rates = AchievableRates(gains, link);
        switch (config.policy) {
          case Policy::kTs: {
            const TsAllocation alloc = AllocateTs(rates, utilities);
            if (alloc.degenerate) ++stats.degenerate_frames;
            shares = alloc.shares.shares;
            break;
          }
          case Policy::kWeightedTs: {
            const TsAllocation alloc = AllocateWeightedTs(rates, utilities, weights);
            if (alloc.degenerate) ++stats.degenerate_frames;
            shares = alloc.shares.shares;
            break;
          }
          case Policy::kGs: {
            const int pick = GsSelect(*gs, rates, utilities);
            std::fill(shares.begin(), shares.end(), 0.0);
            shares[pick] = 1.0;
            gs->Update(pick, rates[pick]);
            break;
          }
          case Policy::kQtsl: {
            const SlotGrid grid = GreedyAllocate(QuantizeGains(gains, quantizers), *table);
            shares = grid.Shares();
            break;
          }
          case Policy::kJtpc:
            break;
        }
        for (int i = 0; i < n; ++i) energies[i] = shares[i] * link.transmit_power;
      }

      if (std::abs(Sum(shares) - 1.0) > 1e-9) {
        throw NumericError("shares leave the simplex (sum " + std::to_string(Sum(shares)) + ")");
      }
      CompensatedSum aggregate;
      for (int i = 0; i < n; ++i) {
        const double r = shares[i] * rates[i];
        const double u = utilities[i]->Value(r);
        aggregate.Add(u);
        rate_moments[i].Add(r);
        utility_sums[i].Add(u);
        share_sums[i].Add(shares[i]);
        energy_sums[i].Add(energies[i]);
        if (shares[i] > 0.0) ++selected[i];
      }
      taur_sum.Add(aggregate.Total());
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericError("frame " + std::to_string(t) + ": " + e.what());
    }
  }

  const double frames = static_cast<double>(config.frames);
  stats.taur = taur_sum.Total() / frames;
  for (int i = 0; i < n; ++i) {
    stats.mean_rate.push_back(rate_moments[i].mean());
    stats.rate_std.push_back(rate_moments[i].population_std());
    stats.mean_utility.push_back(utility_sums[i].Total() / frames);
    stats.mean_share.push_back(share_sums[i].Total() / frames);
    stats.mean_energy.push_back(energy_sums[i].Total() / frames);
    stats.selection_frequency.push_back(static_cast<double>(selected[i]) / frames);
  }
  return stats;
}

std::vector<SweepRow> Sweep(std::span<const ExperimentConfig> configs, int jobs) {
  std::vector<SweepRow> rows(configs.size());
  auto run = [&](std::size_t k) {
    rows[k].config = configs[k];
    try {
      rows[k].stats = RunExperiment(configs[k]);
    } catch (const std::exception& e) {
      rows[k].error = e.what();
    }
  };
  if (jobs <= 1 || configs.size() <= 1) {
    for (std::size_t k = 0; k < configs.size(); ++k) run(k);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const int count = std::min<int>(jobs, static_cast<int>(configs.size()));
  for (int w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t k = next++; k < configs.size(); k = next++) run(k);
    });
  }
  for (auto& th : workers) th.join();
  return rows;
}

}  // namespace taur
