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

#include "taur/qtsl.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "taur/errors.h"
#include "taur/numerics.h"

namespace taur {

std::vector<double> SlotGrid::Shares() const {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / slots;
  }
  return out;
}

double BinExpectedUtility(const Utility& u, double share, int state,
                          const Quantizer& q, double mean_gain,
                          const LinkBudget& link) {
  if (state < 1 || state > q.states()) {
    throw ConfigError("channel state " + std::to_string(state) + " out of range");
  }
  if (!(share >= 0.0 && share <= 1.0)) {
    throw DomainError("share must lie in [0, 1]");
  }
  if (share == 0.0) return 0.0;
  const double lo = q.lower(state);
  double hi = q.upper(state);
  if (std::isinf(hi)) {
    hi = std::max(lo, -mean_gain * std::log(kTopBinTailMass));
  }
  // Truncated mass e^{-lo/m} - e^{-hi/m}, written to avoid cancellation.
  const double mass =
      std::exp(-lo / mean_gain) * -std::expm1(-(hi - lo) / mean_gain);
  if (!(mass > 0.0)) return u.Value(share * AchievableRate(lo, link.transmit_power, link));
  auto integrand = [&](double g) {
    const double rate = AchievableRate(g, link.transmit_power, link);
    return u.Value(share * rate) * std::exp(-g / mean_gain) / mean_gain;
  };
  // Panels shrink by 4x toward the lower edge, where log(1 + c(g)/A)
  // changes fastest; a single panel over a wide bin is off by up to 5e-4.
  const QuadratureRule& rule = GaussLegendre(kBinQuadratureOrder);
  const double width = hi - lo;
  CompensatedSum total;
  double right = hi;
  double scale = 1.0;
  for (int j = 1; j < kBinQuadraturePanels; ++j) {
    scale *= 0.25;
    const double left = lo + width * scale;
    total.Add(Integrate(integrand, left, right, rule));
    right = left;
  }
  total.Add(Integrate(integrand, lo, right, rule));
  return total.Total() / mass;
}

ExpectedUtilityTable::ExpectedUtilityTable(const ChannelModel& model,
                                           const UtilityProfile& utilities,
                                           std::span<const Quantizer> quantizers,
                                           const LinkBudget& link, int slots)
    : slots_(slots) {
  if (slots < 1) throw ConfigError("slot count L must be >= 1");
  const int n = model.users();
  if (static_cast<int>(utilities.size()) != n ||
      static_cast<int>(quantizers.size()) != n) {
    throw ConfigError("model, utilities and quantizers differ in user count");
  }
  link.Validate();
  values_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int k_max = quantizers[i].states();
    values_[i].assign(k_max, std::vector<double>(slots + 1, 0.0));
    for (int k = 1; k <= k_max; ++k) {
      for (int c = 1; c <= slots; ++c) {
        values_[i][k - 1][c] =
            BinExpectedUtility(*utilities[i], static_cast<double>(c) / slots, k,
                               quantizers[i], model.mean_gain(i), link);
      }
    }
  }
}

double ExpectedUtilityTable::Value(int user, int state, int slot_count) const {
  return values_[user][state - 1][slot_count];
}

double ExpectedUtilityTable::Increment(int user, int state, int slot_count) const {
  const auto& row = values_[user][state - 1];
  return row[slot_count + 1] - row[slot_count];
}

namespace {

void CheckStates(const StateVector& states, const ExpectedUtilityTable& table) {
  if (static_cast<int>(states.states.size()) != table.users()) {
    throw ConfigError("state vector does not match the user count");
  }
  for (int i = 0; i < table.users(); ++i) {
    const int k = states.states[i];
    if (k < 1 || k > table.states(i)) {
      throw ConfigError("state of user " + std::to_string(i) + " out of range");
    }
  }
}

}  // namespace

std::vector<std::vector<double>> MarginalTable(const StateVector& states,
                                               const ExpectedUtilityTable& table) {
  CheckStates(states, table);
  std::vector<std::vector<double>> out(table.users());
  for (int i = 0; i < table.users(); ++i) {
    for (int c = 0; c < table.slots(); ++c) {
      out[i].push_back(table.Increment(i, states.states[i], c));
    }
  }
  return out;
}

double QtslObjective(const StateVector& states, const SlotGrid& grid,
                     const ExpectedUtilityTable& table) {
  CheckStates(states, table);
  std::vector<double> terms;
  terms.reserve(grid.counts.size());
  for (int i = 0; i < table.users(); ++i) {
    terms.push_back(table.Value(i, states.states[i], grid.counts[i]));
  }
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

SlotGrid GreedyAllocate(const StateVector& states,
                        const ExpectedUtilityTable& table,
                        std::int64_t* increment_evaluations) {
  CheckStates(states, table);
  const int n = table.users();
  SlotGrid grid;
  grid.slots = table.slots();
  grid.counts.assign(n, 0);
  std::int64_t evaluations = 0;
  for (int v = 0; v < grid.slots; ++v) {
    int best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double gain = table.Increment(i, states.states[i], grid.counts[i]);
      ++evaluations;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    ++grid.counts[best];
  }
  if (increment_evaluations != nullptr) *increment_evaluations = evaluations;
  return grid;
}

SlotGrid ExhaustiveAllocate(const StateVector& states,
                            const ExpectedUtilityTable& table,
                            const EnumerationCap& cap) {
  CheckStates(states, table);
  const int n = table.users();
  const int slots = table.slots();
  if (n > cap.max_users || slots > cap.max_slots) {
    throw SizeError("exhaustive search capped at N <= " +
                    std::to_string(cap.max_users) + ", L <= " +
                    std::to_string(cap.max_slots) + " (got N = " +
                    std::to_string(n) + ", L = " + std::to_string(slots) + ")");
  }
  SlotGrid best{slots, std::vector<int>(n, 0)};
  double best_value = -std::numeric_limits<double>::infinity();
  SlotGrid current{slots, std::vector<int>(n, 0)};

  // Counts for user i run from the remaining budget down to 0, so the
  // enumeration is in decreasing lexicographic order.
  auto recurse = [&](auto&& self, int i, int remaining) -> void {
    if (i == n - 1) {
      current.counts[i] = remaining;
      const double value = QtslObjective(states, current, table);
      if (value > best_value) {
        best_value = value;
        best = current;
      }
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      current.counts[i] = c;
      self(self, i + 1, remaining - c);
    }
  };
  recurse(recurse, 0, slots);
  return best;
}

StateVector QuantizeGains(const NetworkGain& gains,
                          std::span<const Quantizer> quantizers) {
  if (gains.gains.size() != quantizers.size()) {
    throw ConfigError("gains and quantizers differ in length");
  }
  StateVector out;
  out.states.reserve(quantizers.size());
  for (std::size_t i = 0; i < quantizers.size(); ++i) {
    out.states.push_back(quantizers[i].Quantize(gains.gains[i]));
  }
  return out;
}

}  // namespace taur
