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

#ifndef TAUR_FAIRNESS_H_
#define TAUR_FAIRNESS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "taur/channel.h"
#include "taur/errors.h"
#include "taur/ts_policy.h"
#include "taur/utility.h"

namespace taur {

struct WeightVector {
  std::vector<double> weights;
};

struct FairnessReport {
  std::vector<double> average_utility;  // E^[U_i] on the sample set
  double common_value = 0.0;            // min_i E^[U_i]
  double spread = 0.0;                  // max - min
  int iterations = 0;
  // Per-iteration weights, spreads and average utilities, starting from the
  // uniform weights.
  std::vector<std::vector<double>> weight_history;
  std::vector<double> spread_history;
  std::vector<std::vector<double>> utility_history;
};

struct FairnessOptions {
  double tolerance = 1e-3;
  int sample_budget = 10000;
  double step = 0.5;
  int max_iterations = 50;
  std::uint64_t seed = 1;
};

struct FairnessResult {
  WeightVector weights;
  FairnessReport report;
};

class FairnessConvergenceError : public NumericError {
 public:
  FairnessConvergenceError(const std::string& what, FairnessResult best)
      : NumericError(what), best_(std::move(best)) {}
  const FairnessResult& best() const { return best_; }

 private:
  FairnessResult best_;
};

// Per-frame maximizer of sum_i w_i U_i(rho_i c_i) on the simplex. Weights
// must lie on the simplex. A frame where every w_i c_i is zero comes back
// with the degenerate flag set.
TsAllocation WeightedAllocate(std::span<const double> rates,
                              const UtilityProfile& utilities,
                              std::span<const double> weights);

// Fixed common-random-number rate set: rates[t][i] at constant power for
// frames 0..count-1 of the given seed.
std::vector<std::vector<double>> SampleRateSet(const ChannelModel& model,
                                               const LinkBudget& link,
                                               std::uint64_t seed, int count);

// E^[U_i] under weighted allocation over the rate set.
std::vector<double> AverageUtilities(
    const std::vector<std::vector<double>>& rate_set,
    const UtilityProfile& utilities, std::span<const double> weights);

// Multiplicative weight adaptation
//   w_i <- w_i exp(step (mean_j E^[U_j] - E^[U_i])), renormalized,
// until max_i E^[U_i] - min_i E^[U_i] <= tolerance. Throws
// FairnessConvergenceError with the best iterate when the cap is reached.
FairnessResult AdaptWeights(const ChannelModel& model,
                            const UtilityProfile& utilities,
                            const LinkBudget& link,
                            const FairnessOptions& options = {});

// Same iteration over a precomputed rate set.
FairnessResult AdaptWeightsOnRates(
    const std::vector<std::vector<double>>& rate_set,
    const UtilityProfile& utilities, const FairnessOptions& options = {});

}  // namespace taur

#endif  // TAUR_FAIRNESS_H_
