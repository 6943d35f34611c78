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

#include "taur/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taur/errors.h"
#include "taur/fairness.h"
#include "taur/numerics.h"

namespace taur::oracle {

double WeightedUtility(std::span<const double> shares,
                       std::span<const double> rates,
                       const UtilityProfile& utilities,
                       std::span<const double> weights) {
  CompensatedSum total;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    total.Add(weights[i] * utilities[i]->Value(shares[i] * rates[i]));
  }
  return total.Total();
}

namespace {

// Searches shares[0..n-2] on a box lattice around `center`; the last share
// takes the remainder. Points off the simplex are skipped.
void BoxSearch(std::span<const double> rates, const UtilityProfile& utilities,
               std::span<const double> weights, const std::vector<double>& center,
               double radius, double step, SimplexPoint& best) {
  const int n = static_cast<int>(rates.size());
  const long per_axis = std::lround(2.0 * radius / step);
  std::vector<long> idx(n - 1, 0);
  std::vector<double> point(n);
  while (true) {
    double used = 0.0;
    bool feasible = true;
    for (int i = 0; i < n - 1; ++i) {
      point[i] = center[i] - radius + static_cast<double>(idx[i]) * step;
      if (point[i] < -1e-15 || point[i] > 1.0 + 1e-15) feasible = false;
      point[i] = std::clamp(point[i], 0.0, 1.0);
      used += point[i];
    }
    point[n - 1] = 1.0 - used;
    if (point[n - 1] < -1e-12) feasible = false;
    point[n - 1] = std::max(0.0, point[n - 1]);
    if (feasible) {
      const double v = WeightedUtility(point, rates, utilities, weights);
      if (v > best.value) {
        best.value = v;
        best.shares = point;
      }
    }
    int axis = 0;
    while (axis < n - 1 && ++idx[axis] > per_axis) {
      idx[axis] = 0;
      ++axis;
    }
    if (axis == n - 1) break;
  }
}

}  // namespace

SimplexPoint GridSearchSimplex(std::span<const double> rates,
                               const UtilityProfile& utilities,
                               std::span<const double> weights, double step) {
  const int n = static_cast<int>(rates.size());
  SimplexPoint best;
  best.value = -std::numeric_limits<double>::infinity();
  if (n == 1) {
    best.shares = {1.0};
    best.value = WeightedUtility(best.shares, rates, utilities, weights);
    return best;
  }
  const long m = std::lround(1.0 / step);
  // Integer lattice: counts k_i >= 0 with sum m.
  std::vector<long> k(n, 0);
  std::vector<double> point(n);
  auto recurse = [&](auto&& self, int i, long remaining) -> void {
    if (i == n - 1) {
      k[i] = remaining;
      for (int j = 0; j < n; ++j) point[j] = static_cast<double>(k[j]) / m;
      const double v = WeightedUtility(point, rates, utilities, weights);
      if (v > best.value) {
        best.value = v;
        best.shares = point;
      }
      return;
    }
    for (long c = 0; c <= remaining; ++c) {
      k[i] = c;
      self(self, i + 1, remaining - c);
    }
  };
  recurse(recurse, 0, m);
  return best;
}

SimplexPoint RefinedSimplexSearch(std::span<const double> rates,
                                  const UtilityProfile& utilities,
                                  std::span<const double> weights, double step,
                                  double final_step) {
  SimplexPoint best = GridSearchSimplex(rates, utilities, weights, step);
  if (rates.size() == 1) return best;
  for (double h = step / 10.0; h >= final_step * 0.999; h /= 10.0) {
    const std::vector<double> center = best.shares;
    BoxSearch(rates, utilities, weights, center, 10.0 * h, h, best);
  }
  return best;
}

double CentralDifference(const std::function<double(double)>& f, double x,
                         double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double DirectionalSecondDifference(
    const std::function<double(double, double)>& f, double x, double y,
    double dx, double dy, double h) {
  return f(x + h * dx, y + h * dy) - 2.0 * f(x, y) + f(x - h * dx, y - h * dy);
}

EnergySplit GridSearchTwoSampleEnergy(const Utility& u, double gain1,
                                      double gain2, double budget,
                                      const LinkBudget& link, double step) {
  const double total = 2.0 * budget;
  const long m = std::lround(total / step);
  EnergySplit best;
  best.value = -std::numeric_limits<double>::infinity();
  for (long j = 0; j <= m; ++j) {
    const double s1 = total * static_cast<double>(j) / m;
    const double s2 = total - s1;
    const double v = 0.5 * (u.Value(AchievableRate(gain1, s1, link)) +
                            u.Value(AchievableRate(gain2, s2, link)));
    if (v > best.value) {
      best.value = v;
      best.first_energy = s1;
    }
  }
  return best;
}

Estimate MonteCarloUtility(const Utility& u, double share, double mean_gain,
                           const LinkBudget& link, std::uint64_t seed,
                           std::int64_t draws) {
  const ChannelModel model({mean_gain});
  CompensatedSum sum, sum_sq;
  for (std::int64_t t = 0; t < draws; ++t) {
    const double g = SampleGains(model, seed, static_cast<std::uint64_t>(t)).gains[0];
    const double v = u.Value(share * AchievableRate(g, link.transmit_power, link));
    sum.Add(v);
    sum_sq.Add(v * v);
  }
  const double n = static_cast<double>(draws);
  const double mean = sum.Total() / n;
  const double var = std::max(0.0, sum_sq.Total() / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

std::vector<double> BisectFairWeights(
    const std::vector<std::vector<double>>& rate_set,
    const UtilityProfile& utilities, double tolerance) {
  if (utilities.size() != 2) throw ConfigError("weight bisection is for two users");
  auto gap = [&](double w1) {
    const std::vector<double> w = {w1, 1.0 - w1};
    const std::vector<double> avg = AverageUtilities(rate_set, utilities, w);
    return avg[0] - avg[1];
  };
  // E^[U_1] - E^[U_2] increases with w_1.
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  for (int it = 0; it < 200 && hi - lo > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double w1 = 0.5 * (lo + hi);
  return {w1, 1.0 - w1};
}

}  // namespace taur::oracle
