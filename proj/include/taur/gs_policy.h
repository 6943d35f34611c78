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

#ifndef TAUR_GS_POLICY_H_
#define TAUR_GS_POLICY_H_

#include <span>
#include <vector>

#include "taur/utility.h"

namespace taur {

// Exponentially averaged rates for the gradient scheduler.
class GsState {
 public:
  GsState(std::vector<double> initial_rates, double alpha);
  static GsState Uniform(int users, double initial_rate, double alpha);

  int users() const { return static_cast<int>(avg_rates_.size()); }
  double alpha() const { return alpha_; }
  std::span<const double> avg_rates() const { return avg_rates_; }
  double avg_rate(int user) const { return avg_rates_[user]; }

  // R_i <- (1 - alpha) R_i, plus alpha * rate for the selected user.
  void Update(int selected, double selected_rate);

 private:
  std::vector<double> avg_rates_;
  double alpha_;
};

// argmax_i U_i'(R_i) c_i; ties go to the lowest index.
int GsSelect(const GsState& state, std::span<const double> rates,
             const UtilityProfile& utilities);

GsState GsUpdate(const GsState& state, int selected, double selected_rate);

}  // namespace taur

#endif  // TAUR_GS_POLICY_H_
