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

#include "taur/ts_policy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "taur/errors.h"
#include "taur/numerics.h"

namespace taur {
namespace {

void CheckInputs(std::span<const double> rates, const UtilityProfile& utilities,
                 std::span<const double> weights) {
  if (rates.empty()) throw ConfigError("time sharing needs >= 1 user");
  if (utilities.size() != rates.size() || weights.size() != rates.size()) {
    throw ConfigError("rates, utilities and weights differ in length");
  }
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] >= 0.0) || !std::isfinite(rates[i])) {
      throw DomainError("rate of user " + std::to_string(i) +
                        " must be finite and >= 0");
    }
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw DomainError("weight of user " + std::to_string(i) +
                        " must be finite and >= 0");
    }
    if (!utilities[i]) throw ConfigError("missing utility");
  }
}

std::vector<int> ActiveSet(const std::vector<double>& shares) {
  std::vector<int> active;
  for (int i = 0; i < static_cast<int>(shares.size()); ++i) {
    if (shares[i] > 0.0) active.push_back(i);
  }
  return active;
}

void Normalize(std::vector<double>& shares) {
  const double total = Sum(shares);
  if (total > 0.0) {
    for (double& s : shares) s /= total;
  }
}

// Water-filling for weighted log utilities: rho_i = w_i / lambda - A_i / c_i
// on the active set, which is a prefix of users sorted by w_i c_i / A_i.
bool LogClosedForm(std::span<const double> rates,
                   const UtilityProfile& utilities,
                   std::span<const double> weights,
                   const std::vector<int>& candidates, TsAllocation& out) {
  std::vector<double> concavity(rates.size(), 0.0);
  for (int i : candidates) {
    const auto* log_u = dynamic_cast<const LogUtility*>(utilities[i].get());
    if (log_u == nullptr) return false;
    concavity[i] = log_u->concavity();
  }
  std::vector<int> order = candidates;
  auto score = [&](int i) { return weights[i] * rates[i] / concavity[i]; };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score(a) > score(b); });

  double weight_sum = 0.0;
  double offset_sum = 0.0;
  double lambda = 0.0;
  std::size_t m = 0;
  while (m < order.size()) {
    const int next = order[m];
    if (m > 0 && !(score(next) > lambda)) break;
    weight_sum += weights[next];
    offset_sum += concavity[next] / rates[next];
    lambda = weight_sum / (1.0 + offset_sum);
    ++m;
  }

  std::vector<double>& shares = out.shares.shares;
  shares.assign(rates.size(), 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const int i = order[j];
    shares[i] = std::max(0.0, weights[i] / lambda - concavity[i] / rates[i]);
  }
  Normalize(shares);
  out.solve.lambda = lambda;
  out.solve.iterations = 0;
  out.solve.active_set = ActiveSet(shares);
  return true;
}

}  // namespace

double TimeShareVector::Sum() const { return taur::Sum(shares); }

MultiplierSolve SolveSimplexMultiplier(
    int users, const std::function<double(int, double)>& share, double lo,
    double hi, const TsOptions& options, std::vector<double>& shares) {
  shares.assign(users, 0.0);
  auto fill = [&](double lambda) {
    CompensatedSum total;
    for (int i = 0; i < users; ++i) {
      shares[i] = share(i, lambda);
      total.Add(shares[i]);
    }
    return total.Total();
  };

  MultiplierSolve solve;
  double lambda = 0.5 * (lo + hi);
  bool done = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    solve.iterations = it;
    lambda = 0.5 * (lo + hi);
    const double total = fill(lambda);
    if (std::abs(total - 1.0) <= options.simplex_tolerance) {
      done = true;
      break;
    }
    if (total > 1.0) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    // Bracket collapsed to adjacent doubles: lambda is as good as it gets.
    const double next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) {
      lambda = (total > 1.0) ? hi : lo;
      fill(lambda);
      done = true;
      break;
    }
  }
  if (!done) {
    throw NumericError("simplex multiplier bisection did not converge in " +
                       std::to_string(options.max_iterations) + " iterations");
  }
  Normalize(shares);
  solve.lambda = lambda;
  solve.active_set = ActiveSet(shares);
  return solve;
}

TsAllocation AllocateWeightedTs(std::span<const double> rates,
                                const UtilityProfile& utilities,
                                std::span<const double> weights,
                                const TsOptions& options) {
  CheckInputs(rates, utilities, weights);
  const int n = static_cast<int>(rates.size());

  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    if (weights[i] > 0.0 && rates[i] > 0.0) candidates.push_back(i);
  }

  TsAllocation out;
  if (candidates.empty()) {
    out.degenerate = true;
    out.shares.shares.assign(n, 1.0 / n);
    out.solve.active_set.resize(n);
    std::iota(out.solve.active_set.begin(), out.solve.active_set.end(), 0);
    return out;
  }
  if (candidates.size() == 1) {
    const int i = candidates.front();
    out.shares.shares.assign(n, 0.0);
    out.shares.shares[i] = 1.0;
    out.solve.lambda = weights[i] * MarginalShare(*utilities[i], rates[i], 1.0);
    out.solve.active_set = {i};
    return out;
  }
  if (options.closed_form &&
      LogClosedForm(rates, utilities, weights, candidates, out)) {
    return out;
  }

  // Generic path: rho_i(lambda) = (c U')^{-1}(lambda / w_i).
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i : candidates) {
    lo = std::min(lo, weights[i] * MarginalShare(*utilities[i], rates[i], 1.0));
    hi = std::max(hi, weights[i] * MarginalShare(*utilities[i], rates[i], 0.0));
  }
  auto share = [&](int i, double lambda) {
    if (weights[i] <= 0.0 || rates[i] <= 0.0) return 0.0;
    return InverseMarginalShare(*utilities[i], rates[i], lambda / weights[i]);
  };
  out.solve = SolveSimplexMultiplier(n, share, lo, hi, options, out.shares.shares);
  return out;
}

TsAllocation AllocateTs(std::span<const double> rates,
                        const UtilityProfile& utilities,
                        const TsOptions& options) {
  const std::vector<double> ones(rates.size(), 1.0);
  return AllocateWeightedTs(rates, utilities, ones, options);
}

double TaurContribution(const TimeShareVector& shares,
                        std::span<const double> rates,
                        const UtilityProfile& utilities) {
  if (shares.shares.size() != rates.size() || utilities.size() != rates.size()) {
    throw ConfigError("shares, rates and utilities differ in length");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    total.Add(utilities[i]->Value(shares.shares[i] * rates[i]));
  }
  return total.Total();
}

}  // namespace taur
