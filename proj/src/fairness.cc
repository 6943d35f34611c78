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

#include "taur/fairness.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "taur/errors.h"
#include "taur/numerics.h"

namespace taur {
namespace {

FairnessReport Summarize(std::vector<double> average) {
  FairnessReport report;
  const auto [lo, hi] = std::minmax_element(average.begin(), average.end());
  report.common_value = *lo;
  report.spread = *hi - *lo;
  report.average_utility = std::move(average);
  return report;
}

}  // namespace

TsAllocation WeightedAllocate(std::span<const double> rates,
                              const UtilityProfile& utilities,
                              std::span<const double> weights) {
  if (std::abs(Sum(weights) - 1.0) > 1e-12) {
    throw DomainError("weights must sum to one");
  }
  return AllocateWeightedTs(rates, utilities, weights);
}

std::vector<std::vector<double>> SampleRateSet(const ChannelModel& model,
                                               const LinkBudget& link,
                                               std::uint64_t seed, int count) {
  if (count < 1) throw ConfigError("sample budget must be >= 1");
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t) {
    out.push_back(AchievableRates(SampleGains(model, seed, t), link));
  }
  return out;
}

std::vector<double> AverageUtilities(
    const std::vector<std::vector<double>>& rate_set,
    const UtilityProfile& utilities, std::span<const double> weights) {
  const std::size_t n = utilities.size();
  std::vector<CompensatedSum> totals(n);
  for (const auto& rates : rate_set) {
    const TsAllocation alloc = WeightedAllocate(rates, utilities, weights);
    for (std::size_t i = 0; i < n; ++i) {
      totals[i].Add(utilities[i]->Value(alloc.shares.shares[i] * rates[i]));
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = totals[i].Total() / static_cast<double>(rate_set.size());
  }
  return out;
}

FairnessResult AdaptWeightsOnRates(
    const std::vector<std::vector<double>>& rate_set,
    const UtilityProfile& utilities, const FairnessOptions& options) {
  if (utilities.empty()) throw ConfigError("fairness needs >= 1 user");
  if (!(options.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(options.step > 0.0)) throw ConfigError("step must be positive");
  const int n = static_cast<int>(utilities.size());

  std::vector<double> w(n, 1.0 / n);
  FairnessResult best;
  std::vector<std::vector<double>> weight_history;
  std::vector<double> spread_history;
  std::vector<std::vector<double>> utility_history;
  for (int it = 0;; ++it) {
    FairnessReport report = Summarize(AverageUtilities(rate_set, utilities, w));
    report.iterations = it;
    weight_history.push_back(w);
    spread_history.push_back(report.spread);
    utility_history.push_back(report.average_utility);
    if (it == 0 || report.spread < best.report.spread) {
      best.weights.weights = w;
      best.report = report;
    }
    if (report.spread <= options.tolerance) {
      report.weight_history = std::move(weight_history);
      report.spread_history = std::move(spread_history);
      report.utility_history = std::move(utility_history);
      return {WeightVector{w}, std::move(report)};
    }
    if (it >= options.max_iterations) {
      best.report.weight_history = std::move(weight_history);
      best.report.spread_history = std::move(spread_history);
      best.report.utility_history = std::move(utility_history);
      throw FairnessConvergenceError(
          "weight adaptation did not equalize utilities in " +
              std::to_string(options.max_iterations) + " iterations",
          std::move(best));
    }
    const double mean = Sum(report.average_utility) / n;
    for (int i = 0; i < n; ++i) {
      w[i] *= std::exp(options.step * (mean - report.average_utility[i]));
    }
    const double total = Sum(w);
    for (double& wi : w) wi /= total;
  }
}

FairnessResult AdaptWeights(const ChannelModel& model,
                            const UtilityProfile& utilities,
                            const LinkBudget& link,
                            const FairnessOptions& options) {
  link.Validate();
  if (static_cast<int>(utilities.size()) != model.users()) {
    throw ConfigError("model and utilities differ in user count");
  }
  const auto rate_set =
      SampleRateSet(model, link, options.seed, options.sample_budget);
  return AdaptWeightsOnRates(rate_set, utilities, options);
}

}  // namespace taur
