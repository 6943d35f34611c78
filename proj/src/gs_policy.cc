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

#include "taur/gs_policy.h"

#include <cmath>
#include <string>

#include "taur/errors.h"

namespace taur {

GsState::GsState(std::vector<double> initial_rates, double alpha)
    : avg_rates_(std::move(initial_rates)), alpha_(alpha) {
  if (avg_rates_.empty()) throw ConfigError("GS state needs >= 1 user");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("GS smoothing alpha must be in (0, 1)");
  }
  for (double r : avg_rates_) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw ConfigError("GS average rates must be finite and >= 0");
    }
  }
}

GsState GsState::Uniform(int users, double initial_rate, double alpha) {
  if (users < 1) throw ConfigError("GS state needs >= 1 user");
  return GsState(std::vector<double>(users, initial_rate), alpha);
}

void GsState::Update(int selected, double selected_rate) {
  if (selected < 0 || selected >= users()) {
    throw ConfigError("GS update: selected user " + std::to_string(selected) +
                      " out of range");
  }
  for (int i = 0; i < users(); ++i) {
    avg_rates_[i] *= (1.0 - alpha_);
  }
  avg_rates_[selected] += alpha_ * selected_rate;
}

int GsSelect(const GsState& state, std::span<const double> rates,
             const UtilityProfile& utilities) {
  const int n = state.users();
  if (static_cast<int>(rates.size()) != n ||
      static_cast<int>(utilities.size()) != n) {
    throw ConfigError("GS select: rates/utilities do not match the state");
  }
  int best = 0;
  double best_score = utilities[0]->Derivative(state.avg_rate(0)) * rates[0];
  for (int i = 1; i < n; ++i) {
    const double score = utilities[i]->Derivative(state.avg_rate(i)) * rates[i];
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

GsState GsUpdate(const GsState& state, int selected, double selected_rate) {
  GsState next = state;
  next.Update(selected, selected_rate);
  return next;
}

}  // namespace taur
