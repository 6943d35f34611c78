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

#ifndef TAUR_QTSL_H_
#define TAUR_QTSL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "taur/channel.h"
#include "taur/utility.h"

namespace taur {

// Reported channel states S_1..S_N, each in 1..K.
struct StateVector {
  std::vector<int> states;
};

// Slot counts n_i with rho_i = n_i / L.
struct SlotGrid {
  int slots = 0;
  std::vector<int> counts;

  std::vector<double> Shares() const;
};

inline constexpr int kBinQuadratureOrder = 64;
inline constexpr int kBinQuadraturePanels = 9;
// The unbounded top bin is integrated up to this upper-tail probability.
inline constexpr double kTopBinTailMass = 1e-9;

// E[U(rho c(g)) | G_k <= g < G_{k+1}] for an exponential gain with the given
// mean, by Gauss-Legendre quadrature against the truncated density.
double BinExpectedUtility(const Utility& u, double share, int state,
                          const Quantizer& q, double mean_gain,
                          const LinkBudget& link);

// Cache of bin-conditional expected utilities U~_i(n / L | k) for every
// user, state and slot count n = 0..L.
class ExpectedUtilityTable {
 public:
  ExpectedUtilityTable(const ChannelModel& model,
                       const UtilityProfile& utilities,
                       std::span<const Quantizer> quantizers,
                       const LinkBudget& link, int slots);

  int users() const { return static_cast<int>(values_.size()); }
  int slots() const { return slots_; }
  int states(int user) const { return static_cast<int>(values_[user].size()); }

  double Value(int user, int state, int slot_count) const;
  // d_i((n + 1) / L) = U~_i((n + 1) / L) - U~_i(n / L).
  double Increment(int user, int state, int slot_count) const;

 private:
  int slots_;
  // [user][state - 1][slot_count]
  std::vector<std::vector<std::vector<double>>> values_;
};

// d_i(n / L) for n = 1..L at each user's reported state.
std::vector<std::vector<double>> MarginalTable(const StateVector& states,
                                               const ExpectedUtilityTable& table);

// sum_i U~_i(n_i / L | S_i). Terms are summed in sorted order so equal
// multisets of terms give bit-identical totals.
double QtslObjective(const StateVector& states, const SlotGrid& grid,
                     const ExpectedUtilityTable& table);

// Assigns the L slots one at a time to the user with the largest increment
// (lowest index on ties). Makes exactly L * N increment lookups, reported
// through increment_evaluations when given.
SlotGrid GreedyAllocate(const StateVector& states,
                        const ExpectedUtilityTable& table,
                        std::int64_t* increment_evaluations = nullptr);

struct EnumerationCap {
  int max_users = 4;
  int max_slots = 6;
};

// Enumerates every composition of L into N parts and returns the best; ties
// keep the lexicographically largest count vector. Throws SizeError above
// the cap.
SlotGrid ExhaustiveAllocate(const StateVector& states,
                            const ExpectedUtilityTable& table,
                            const EnumerationCap& cap = {});

StateVector QuantizeGains(const NetworkGain& gains,
                          std::span<const Quantizer> quantizers);

}  // namespace taur

#endif  // TAUR_QTSL_H_
