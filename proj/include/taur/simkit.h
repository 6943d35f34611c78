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

#ifndef TAUR_SIMKIT_H_
#define TAUR_SIMKIT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taur/channel.h"
#include "taur/utility.h"

namespace taur {

enum class Policy { kTs, kGs, kJtpc, kQtsl, kWeightedTs };

std::string_view PolicyName(Policy policy);
// Accepts ts, gs, jtpc, qtsl, weighted-ts. Throws ConfigError otherwise.
Policy ParsePolicy(std::string_view name);

struct ExperimentConfig {
  int users = 8;
  double mean_snr_db = 10.0;
  // Per-user average SNR; overrides mean_snr_db when nonempty.
  std::vector<double> user_snr_db;
  double snr_gap_db = 8.2;
  double concavity = 0.1;
  // Per-user A; overrides concavity when nonempty.
  std::vector<double> user_concavity;
  Policy policy = Policy::kTs;

  // GS
  double alpha = 0.01;
  double gs_initial_rate = 0.0;

  // JTPC. power_budget <= 0 selects transmit_power / users, the average
  // energy a constant-power user spends under symmetric time sharing.
  double delta = 1e-6;
  int max_gs_iterations = 100;
  double power_budget = 0.0;
  int training_samples = 10000;
  bool downlink = false;

  // QTSL
  int slots = 8;
  int feedback_bits = 3;

  // Weighted TS
  std::vector<double> weights;

  std::int64_t frames = 10000;
  std::uint64_t seed = 1;

  // Throws ConfigError naming the offending field.
  void Validate() const;
  LinkBudget Link() const;
  ChannelModel Model() const;
  UtilityProfile Utilities() const;
  std::vector<double> SnrDb() const;
  std::vector<double> Budgets() const;
};

struct SimStats {
  double taur = 0.0;
  std::vector<double> mean_rate;
  std::vector<double> rate_std;  // population std over frames
  std::vector<double> mean_utility;
  std::vector<double> mean_share;
  // Fraction of frames in which the user received a positive share.
  std::vector<double> selection_frequency;
  std::int64_t frames = 0;
  std::int64_t degenerate_frames = 0;
  // Average energy per user (JTPC only; constant-power policies report
  // transmit_power * mean share).
  std::vector<double> mean_energy;

  double MeanRate() const;     // averaged over users
  double MeanRateStd() const;  // averaged over users
};

// Seed for the JTPC training set, distinct from the evaluation frames.
std::uint64_t TrainingSeed(std::uint64_t seed);

SimStats RunExperiment(const ExperimentConfig& config);

struct SweepRow {
  ExperimentConfig config;
  std::optional<SimStats> stats;
  std::string error;  // set when stats is empty
};

// Runs every config; failures are recorded per row. Rows keep input order.
std::vector<SweepRow> Sweep(std::span<const ExperimentConfig> configs,
                            int jobs = 1);

}  // namespace taur

#endif  // TAUR_SIMKIT_H_
