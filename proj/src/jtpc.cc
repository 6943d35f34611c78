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

#include "taur/jtpc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "taur/errors.h"
#include "taur/numerics.h"

namespace taur {
namespace {

void CheckSamples(std::span<const NetworkGain> samples,
                  const UtilityProfile& utilities) {
  if (samples.empty()) throw ConfigError("JTPC needs a nonempty sample set");
  if (utilities.empty()) throw ConfigError("JTPC needs >= 1 user");
  for (const NetworkGain& g : samples) {
    if (g.gains.size() != utilities.size()) {
      throw ConfigError("sample size does not match the user count");
    }
  }
}

// One (sample, user) slot that can absorb energy under a budget.
struct EnergyCell {
  int sample;
  int user;
};

// Finds the multiplier lambda with
//   (1 / T) sum_cells s(cell; lambda) = budget
// by bisection (s is nonincreasing in lambda), then writes the energies.
double SolveBudget(std::span<const NetworkGain> samples,
                   const SampleMatrix& shares, const UtilityProfile& utilities,
                   const std::vector<EnergyCell>& cells, double budget,
                   const LinkBudget& link, double tolerance,
                   SampleMatrix& energies) {
  const double num_samples = static_cast<double>(samples.size());
  auto energy = [&](const EnergyCell& c, double lambda) {
    return InverseMarginalEnergy(*utilities[c.user], shares[c.sample][c.user],
                                 lambda, samples[c.sample].gains[c.user], link);
  };
  auto average = [&](double lambda) {
    CompensatedSum total;
    for (const EnergyCell& c : cells) total.Add(energy(c, lambda));
    return total.Total() / num_samples;
  };

  // Above the largest first-unit marginal nobody takes energy.
  double hi = 0.0;
  for (const EnergyCell& c : cells) {
    hi = std::max(hi, MarginalEnergy(*utilities[c.user], 0.0, 0.0,
                                     samples[c.sample].gains[c.user], link));
  }
  double lo = 0.5 * hi;
  for (int i = 0; average(lo) < budget; ++i) {
    if (i > 4000) throw NumericError("budget multiplier: no lower bracket");
    hi = lo;
    lo *= 0.5;
  }

  double lambda = lo;
  bool done = false;
  for (int it = 0; it < 400; ++it) {
    // Geometric steps while the bracket spans decades, then arithmetic.
    const double mid = (hi > 2.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      done = true;
      break;
    }
    const double avg = average(mid);
    lambda = mid;
    if (std::abs(avg - budget) <= tolerance * budget) {
      done = true;
      break;
    }
    if (avg > budget) {
      lo = mid;
    } else {
      hi = mid;
    }
    lambda = lo;
  }
  if (!done) throw NumericError("budget multiplier bisection did not converge");

  for (const EnergyCell& c : cells) {
    energies[c.sample][c.user] = energy(c, lambda);
  }
  return lambda;
}

void CheckShares(std::span<const NetworkGain> samples, const SampleMatrix& shares,
                 int users) {
  if (shares.size() != samples.size()) {
    throw ConfigError("share matrix does not match the sample set");
  }
  for (const auto& row : shares) {
    if (static_cast<int>(row.size()) != users) {
      throw ConfigError("share row does not match the user count");
    }
  }
}

}  // namespace

double PowerPolicy::Power(int sample, int user) const {
  const double rho = shares[sample][user];
  return rho > 0.0 ? energies[sample][user] / rho : 0.0;
}

std::vector<double> PowerPolicy::AverageEnergy() const {
  if (energies.empty()) return {};
  const int n = static_cast<int>(energies.front().size());
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    CompensatedSum total;
    for (const auto& row : energies) total.Add(row[i]);
    out[i] = total.Total() / static_cast<double>(energies.size());
  }
  return out;
}

double JtpcObjective(std::span<const NetworkGain> samples,
                     const SampleMatrix& shares, const SampleMatrix& energies,
                     const UtilityProfile& utilities, const LinkBudget& link) {
  CompensatedSum total;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    for (std::size_t i = 0; i < utilities.size(); ++i) {
      total.Add(EnergyUtility(*utilities[i], shares[t][i], energies[t][i],
                              samples[t].gains[i], link));
    }
  }
  return total.Total() / static_cast<double>(samples.size());
}

std::vector<double> OptimalSharesAtEnergy(const NetworkGain& sample,
                                          std::span<const double> energies,
                                          const UtilityProfile& utilities,
                                          const LinkBudget& link) {
  const int n = static_cast<int>(utilities.size());
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    if (energies[i] > 0.0 && sample.gains[i] > 0.0) active.push_back(i);
  }
  std::vector<double> shares(n, 0.0);
  if (active.empty()) {
    // Nothing to gain anywhere; any point of the simplex is optimal.
    std::fill(shares.begin(), shares.end(), 1.0 / n);
    return shares;
  }
  if (active.size() == 1) {
    shares[active.front()] = 1.0;
    return shares;
  }
  const double m = static_cast<double>(active.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i : active) {
    lo = std::min(lo, MarginalShareAtEnergy(*utilities[i], 1.0, energies[i],
                                            sample.gains[i], link));
    hi = std::max(hi, MarginalShareAtEnergy(*utilities[i], 1.0 / m, energies[i],
                                            sample.gains[i], link));
  }
  auto share = [&](int i, double lambda) {
    if (energies[i] <= 0.0 || sample.gains[i] <= 0.0) return 0.0;
    return InverseMarginalShareAtEnergy(*utilities[i], energies[i], lambda,
                                        sample.gains[i], link);
  };
  SolveSimplexMultiplier(n, share, lo, hi, TsOptions{}, shares);
  return shares;
}

SampleMatrix UpdateShares(std::span<const NetworkGain> samples,
                          const SampleMatrix& energies,
                          const UtilityProfile& utilities,
                          const LinkBudget& link) {
  CheckSamples(samples, utilities);
  SampleMatrix shares(samples.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    shares[t] = OptimalSharesAtEnergy(samples[t], energies[t], utilities, link);
  }
  return shares;
}

EnergyUpdate UpdateEnergies(std::span<const NetworkGain> samples,
                            const SampleMatrix& shares,
                            const UtilityProfile& utilities,
                            std::span<const double> budgets,
                            const LinkBudget& link, double budget_tolerance) {
  CheckSamples(samples, utilities);
  const int n = static_cast<int>(utilities.size());
  CheckShares(samples, shares, n);
  if (static_cast<int>(budgets.size()) != n) {
    throw ConfigError("one average power budget per user is required");
  }
  EnergyUpdate out;
  out.energies.assign(samples.size(), std::vector<double>(n, 0.0));
  out.multipliers.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (!(budgets[i] > 0.0)) throw ConfigError("power budgets must be positive");
    std::vector<EnergyCell> cells;
    for (int t = 0; t < static_cast<int>(samples.size()); ++t) {
      if (shares[t][i] > 0.0 && samples[t].gains[i] > 0.0) cells.push_back({t, i});
    }
    if (cells.empty()) {
      throw DegenerateBudgetError("user " + std::to_string(i) +
                                  " has no sample with both time and gain");
    }
    out.multipliers[i] = SolveBudget(samples, shares, utilities, cells,
                                     budgets[i], link, budget_tolerance,
                                     out.energies);
  }
  return out;
}

EnergyUpdate UpdateEnergiesSumPower(std::span<const NetworkGain> samples,
                                    const SampleMatrix& shares,
                                    const UtilityProfile& utilities,
                                    double total_budget,
                                    const LinkBudget& link,
                                    double budget_tolerance) {
  CheckSamples(samples, utilities);
  const int n = static_cast<int>(utilities.size());
  CheckShares(samples, shares, n);
  if (!(total_budget > 0.0)) throw ConfigError("power budget must be positive");
  EnergyUpdate out;
  out.energies.assign(samples.size(), std::vector<double>(n, 0.0));
  std::vector<EnergyCell> cells;
  for (int t = 0; t < static_cast<int>(samples.size()); ++t) {
    for (int i = 0; i < n; ++i) {
      if (shares[t][i] > 0.0 && samples[t].gains[i] > 0.0) cells.push_back({t, i});
    }
  }
  if (cells.empty()) {
    throw DegenerateBudgetError("no sample has both time and gain");
  }
  out.multipliers = {SolveBudget(samples, shares, utilities, cells,
                                 total_budget, link, budget_tolerance,
                                 out.energies)};
  return out;
}

namespace {

template <typename EnergyStep>
JtpcResult GaussSeidel(std::span<const NetworkGain> samples,
                       const UtilityProfile& utilities,
                       SampleMatrix energies, const LinkBudget& link,
                       const JtpcOptions& options, EnergyStep energy_step,
                       PowerPolicy policy) {
  GaussSeidelTrace trace;
  trace.delta = options.delta;
  double previous = -std::numeric_limits<double>::infinity();
  for (int j = 0;; ++j) {
    SampleMatrix shares = UpdateShares(samples, energies, utilities, link);
    const double objective =
        JtpcObjective(samples, shares, energies, utilities, link);
    trace.objective.push_back(objective);
    trace.iterations = j;
    if (j > 0 && objective - previous < options.delta) {
      trace.converged = true;
      policy.shares = std::move(shares);
      policy.energies = std::move(energies);
      return {std::move(policy), std::move(trace)};
    }
    if (j >= options.max_iterations) {
      throw JtpcConvergenceError(
          "Gauss-Seidel did not converge in " +
              std::to_string(options.max_iterations) + " iterations",
          std::move(trace));
    }
    previous = objective;
    EnergyUpdate update = energy_step(shares);
    energies = std::move(update.energies);
    policy.multipliers = std::move(update.multipliers);
  }
}

}  // namespace

JtpcResult JtpcSolve(std::span<const NetworkGain> samples,
                     const UtilityProfile& utilities,
                     std::span<const double> budgets, const LinkBudget& link,
                     const JtpcOptions& options) {
  CheckSamples(samples, utilities);
  link.Validate();
  const int n = static_cast<int>(utilities.size());
  if (static_cast<int>(budgets.size()) != n) {
    throw ConfigError("one average power budget per user is required");
  }
  for (double b : budgets) {
    if (!(b > 0.0)) throw ConfigError("power budgets must be positive");
  }
  // p^(0) = N * budget and rho = 1 / N, so s^(0) = budget in every sample.
  SampleMatrix energies(samples.size(),
                        std::vector<double>(budgets.begin(), budgets.end()));
  PowerPolicy policy;
  policy.budgets.assign(budgets.begin(), budgets.end());
  auto step = [&](const SampleMatrix& shares) {
    return UpdateEnergies(samples, shares, utilities, budgets, link,
                          options.budget_tolerance);
  };
  return GaussSeidel(samples, utilities, std::move(energies), link, options,
                     step, std::move(policy));
}

JtpcResult JtpcSolveDownlink(std::span<const NetworkGain> samples,
                             const UtilityProfile& utilities,
                             double total_budget, const LinkBudget& link,
                             const JtpcOptions& options) {
  CheckSamples(samples, utilities);
  link.Validate();
  if (!(total_budget > 0.0)) throw ConfigError("power budget must be positive");
  const int n = static_cast<int>(utilities.size());
  SampleMatrix energies(samples.size(), std::vector<double>(n, total_budget / n));
  PowerPolicy policy;
  policy.budgets = {total_budget};
  policy.downlink = true;
  auto step = [&](const SampleMatrix& shares) {
    return UpdateEnergiesSumPower(samples, shares, utilities, total_budget,
                                  link, options.budget_tolerance);
  };
  return GaussSeidel(samples, utilities, std::move(energies), link, options,
                     step, std::move(policy));
}

FrameAllocation AllocateWithMultipliers(const NetworkGain& frame,
                                        const UtilityProfile& utilities,
                                        std::span<const double> multipliers,
                                        const LinkBudget& link) {
  const int n = static_cast<int>(utilities.size());
  if (static_cast<int>(frame.gains.size()) != n ||
      static_cast<int>(multipliers.size()) != n) {
    throw ConfigError("frame, utilities and multipliers differ in length");
  }
  FrameAllocation out;
  out.shares.assign(n, 1.0 / n);
  out.energies.assign(n, 0.0);
  auto energy_step = [&] {
    for (int i = 0; i < n; ++i) {
      out.energies[i] = out.shares[i] > 0.0
                            ? InverseMarginalEnergy(*utilities[i], out.shares[i],
                                                    multipliers[i], frame.gains[i], link)
                            : 0.0;
    }
  };
  auto lagrangian = [&] {
    CompensatedSum total;
    for (int i = 0; i < n; ++i) {
      total.Add(EnergyUtility(*utilities[i], out.shares[i], out.energies[i],
                              frame.gains[i], link));
      total.Add(-multipliers[i] * out.energies[i]);
    }
    return total.Total();
  };
  energy_step();
  double previous = -std::numeric_limits<double>::infinity();
  for (int it = 1; it <= 200; ++it) {
    out.iterations = it;
    out.shares = OptimalSharesAtEnergy(frame, out.energies, utilities, link);
    energy_step();
    const double value = lagrangian();
    if (value - previous <= 1e-13 * std::max(1.0, std::abs(value))) break;
    previous = value;
  }
  return out;
}

}  // namespace taur
