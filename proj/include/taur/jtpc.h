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

#ifndef TAUR_JTPC_H_
#define TAUR_JTPC_H_

#include <span>
#include <string>
#include <vector>

#include "taur/channel.h"
#include "taur/errors.h"
#include "taur/ts_policy.h"
#include "taur/utility.h"

namespace taur {

// Row-major [sample][user].
using SampleMatrix = std::vector<std::vector<double>>;

// Joint time-sharing and power policy on a fixed sample set. Energies are
// s = rho * p (power times normalized duration); s is the primal variable
// and powers are only derived for reporting.
struct PowerPolicy {
  SampleMatrix shares;
  SampleMatrix energies;
  // Per-user average power budgets (uplink), or a single entry (downlink).
  std::vector<double> budgets;
  // Budget multipliers from the last energy update, one per budget.
  std::vector<double> multipliers;
  bool downlink = false;

  int samples() const { return static_cast<int>(shares.size()); }
  // s / rho, reported as 0 when the share is 0.
  double Power(int sample, int user) const;
  // Sample average of s_i per user.
  std::vector<double> AverageEnergy() const;
};

struct GaussSeidelTrace {
  std::vector<double> objective;  // I^(0), I^(1), ...
  double delta = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct JtpcOptions {
  double delta = 1e-6;
  int max_iterations = 100;
  // Relative tolerance on each budget's sample-average energy.
  double budget_tolerance = 1e-12;
};

struct JtpcResult {
  PowerPolicy policy;
  GaussSeidelTrace trace;
};

// Thrown when the iteration cap is hit; carries the trace so far.
class JtpcConvergenceError : public NumericError {
 public:
  JtpcConvergenceError(const std::string& what, GaussSeidelTrace trace)
      : NumericError(what), trace_(std::move(trace)) {}
  const GaussSeidelTrace& trace() const { return trace_; }

 private:
  GaussSeidelTrace trace_;
};

// Uplink: per-user average power budgets.
JtpcResult JtpcSolve(std::span<const NetworkGain> samples,
                     const UtilityProfile& utilities,
                     std::span<const double> budgets, const LinkBudget& link,
                     const JtpcOptions& options = {});

// Downlink: one sum-power budget shared by all users.
JtpcResult JtpcSolveDownlink(std::span<const NetworkGain> samples,
                             const UtilityProfile& utilities,
                             double total_budget, const LinkBudget& link,
                             const JtpcOptions& options = {});

// Sample average of sum_i U_i(rho_i log2(1 + s_i g_i / (rho_i beta N0))).
double JtpcObjective(std::span<const NetworkGain> samples,
                     const SampleMatrix& shares, const SampleMatrix& energies,
                     const UtilityProfile& utilities, const LinkBudget& link);

// Shares maximizing one sample's utility for fixed energies. Users without
// energy or gain get no time.
std::vector<double> OptimalSharesAtEnergy(const NetworkGain& sample,
                                          std::span<const double> energies,
                                          const UtilityProfile& utilities,
                                          const LinkBudget& link);

// Gauss-Seidel step 2: per-sample optimal shares for fixed energies.
SampleMatrix UpdateShares(std::span<const NetworkGain> samples,
                          const SampleMatrix& energies,
                          const UtilityProfile& utilities,
                          const LinkBudget& link);

struct EnergyUpdate {
  SampleMatrix energies;
  std::vector<double> multipliers;
};

// Gauss-Seidel step 4 (uplink): per-user water-filling over the samples
// with the multiplier chosen so the average energy meets the budget.
// Throws DegenerateBudgetError when a user can use energy in no sample.
EnergyUpdate UpdateEnergies(std::span<const NetworkGain> samples,
                            const SampleMatrix& shares,
                            const UtilityProfile& utilities,
                            std::span<const double> budgets,
                            const LinkBudget& link,
                            double budget_tolerance = 1e-12);

// Step 4 for the downlink: one multiplier for the summed energy.
EnergyUpdate UpdateEnergiesSumPower(std::span<const NetworkGain> samples,
                                    const SampleMatrix& shares,
                                    const UtilityProfile& utilities,
                                    double total_budget,
                                    const LinkBudget& link,
                                    double budget_tolerance = 1e-12);

struct FrameAllocation {
  std::vector<double> shares;
  std::vector<double> energies;
  int iterations = 0;
};

// Applies a solved policy to a new frame: maximizes
//   sum_i U_i(rho_i, s_i) - lambda_i s_i
// over the simplex and s >= 0 with the multipliers held fixed. For a
// downlink policy pass the single multiplier repeated per user.
FrameAllocation AllocateWithMultipliers(const NetworkGain& frame,
                                        const UtilityProfile& utilities,
                                        std::span<const double> multipliers,
                                        const LinkBudget& link);

}  // namespace taur

#endif  // TAUR_JTPC_H_
