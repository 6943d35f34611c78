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

#ifndef TAUR_TS_POLICY_H_
#define TAUR_TS_POLICY_H_

#include <functional>
#include <span>
#include <vector>

#include "taur/utility.h"

namespace taur {

// Fractions of a normalized frame; on the unit simplex.
struct TimeShareVector {
  std::vector<double> shares;

  int size() const { return static_cast<int>(shares.size()); }
  double operator[](int i) const { return shares[i]; }
  double Sum() const;
};

struct MultiplierSolve {
  double lambda = 0.0;
  std::vector<int> active_set;  // users with a positive share
  int iterations = 0;           // 0 for the closed-form path
};

struct TsAllocation {
  TimeShareVector shares;
  MultiplierSolve solve;
  // Every weighted rate was zero: shares are uniform and lambda is 0.
  bool degenerate = false;
};

struct TsOptions {
  double simplex_tolerance = 1e-12;
  int max_iterations = 200;
  // Use the active-set closed form when every utility is logarithmic.
  bool closed_form = true;
};

// Maximizes sum_i U_i(rho_i c_i) over the simplex. Users with a positive
// share all have marginal c_i U_i'(rho_i c_i) = lambda; the others have
// c_i U_i'(0) <= lambda.
TsAllocation AllocateTs(std::span<const double> rates,
                        const UtilityProfile& utilities,
                        const TsOptions& options = {});

// Maximizes sum_i w_i U_i(rho_i c_i) over the simplex. Weights need not sum
// to one here; AllocateTs is the all-ones case.
TsAllocation AllocateWeightedTs(std::span<const double> rates,
                                const UtilityProfile& utilities,
                                std::span<const double> weights,
                                const TsOptions& options = {});

// sum_i U_i(rho_i c_i).
double TaurContribution(const TimeShareVector& shares,
                        std::span<const double> rates,
                        const UtilityProfile& utilities);

// Monotone bisection for the simplex multiplier: finds lambda in [lo, hi]
// with sum_i share(i, lambda) = 1, where every share(i, .) is nonincreasing,
// sum >= 1 at lo and sum <= 1 at hi. Writes the shares for the final lambda
// (renormalized onto the simplex). Throws NumericError after max_iterations.
MultiplierSolve SolveSimplexMultiplier(
    int users, const std::function<double(int, double)>& share, double lo,
    double hi, const TsOptions& options, std::vector<double>& shares);

}  // namespace taur

#endif  // TAUR_TS_POLICY_H_
