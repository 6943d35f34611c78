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

#ifndef TAUR_ORACLES_H_
#define TAUR_ORACLES_H_

// Brute-force references. Everything here evaluates only utility values and
// the rate formula, never the allocators' marginals or multipliers, so it
// can certify them.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "taur/channel.h"
#include "taur/utility.h"

namespace taur::oracle {

struct SimplexPoint {
  std::vector<double> shares;
  double value = 0.0;
};

// sum_i w_i U_i(rho_i c_i).
double WeightedUtility(std::span<const double> shares,
                       std::span<const double> rates,
                       const UtilityProfile& utilities,
                       std::span<const double> weights);

// Best point of the simplex lattice with spacing `step` (1 / step must be
// an integer). Intended for N <= 3.
SimplexPoint GridSearchSimplex(std::span<const double> rates,
                               const UtilityProfile& utilities,
                               std::span<const double> weights, double step);

// Grid search at `step`, then repeated 10x zooms around the incumbent down
// to `final_step`.
SimplexPoint RefinedSimplexSearch(std::span<const double> rates,
                                  const UtilityProfile& utilities,
                                  std::span<const double> weights, double step,
                                  double final_step);

double CentralDifference(const std::function<double(double)>& f, double x,
                         double h);

// Second difference f(x + h d) - 2 f(x) + f(x - h d) of a 2-D function.
double DirectionalSecondDifference(
    const std::function<double(double, double)>& f, double x, double y,
    double dx, double dy, double h);

struct EnergySplit {
  double first_energy = 0.0;
  double value = 0.0;
};

// Single user, two equiprobable gains, one time-share of 1: maximizes
// (U(c(s1, g1)) + U(c(2 budget - s1, g2))) / 2 over a grid of s1.
EnergySplit GridSearchTwoSampleEnergy(const Utility& u, double gain1,
                                      double gain2, double budget,
                                      const LinkBudget& link, double step);

// Monte Carlo estimate of E[U(share c(g))] for g ~ exp(mean), with its
// standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};
Estimate MonteCarloUtility(const Utility& u, double share, double mean_gain,
                           const LinkBudget& link, std::uint64_t seed,
                           std::int64_t draws);

// Two users: bisection on w_1 in (0, 1), w_2 = 1 - w_1, for the weight at
// which both average utilities coincide on the rate set.
std::vector<double> BisectFairWeights(
    const std::vector<std::vector<double>>& rate_set,
    const UtilityProfile& utilities, double tolerance);

}  // namespace taur::oracle

#endif  // TAUR_ORACLES_H_
