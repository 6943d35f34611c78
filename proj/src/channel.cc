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

#include "taur/channel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "taur/errors.h"

namespace taur {
namespace {

std::uint64_t Mix64(std::uint64_t x) {
  // SplitMix64 finalizer.
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

void LinkBudget::Validate() const {
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw ConfigError("noise_power must be positive");
  }
  if (!(snr_gap_db >= 0.0) || !std::isfinite(snr_gap_db)) {
    throw ConfigError("snr_gap_db must be >= 0 (linear gap >= 1)");
  }
  if (!(transmit_power >= 0.0) || !std::isfinite(transmit_power)) {
    throw ConfigError("transmit_power must be >= 0");
  }
}

ChannelModel::ChannelModel(std::vector<double> mean_gains)
    : mean_gains_(std::move(mean_gains)) {
  if (mean_gains_.empty()) throw ConfigError("channel model needs >= 1 user");
  for (std::size_t i = 0; i < mean_gains_.size(); ++i) {
    if (!(mean_gains_[i] > 0.0) || !std::isfinite(mean_gains_[i])) {
      throw ConfigError("mean_gain of user " + std::to_string(i) +
                        " must be positive and finite");
    }
  }
}

ChannelModel ChannelModel::Symmetric(int users, double mean_gain) {
  if (users < 1) throw ConfigError("channel model needs >= 1 user");
  return ChannelModel(std::vector<double>(users, mean_gain));
}

ChannelModel ChannelModel::FromSnrDb(std::span<const double> snr_db,
                                     const LinkBudget& link) {
  link.Validate();
  if (!(link.transmit_power > 0.0)) {
    throw ConfigError("average SNR needs a positive transmit power");
  }
  std::vector<double> means;
  means.reserve(snr_db.size());
  for (double db : snr_db) {
    means.push_back(DbToLinear(db) * link.noise_power / link.transmit_power);
  }
  return ChannelModel(std::move(means));
}

double CounterUniform(std::uint64_t seed, std::uint64_t frame,
                      std::uint64_t stream) {
  const std::uint64_t h = Mix64(Mix64(Mix64(seed) ^ frame) ^ stream);
  // 53 random bits, centered in their cell: strictly inside (0, 1).
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

NetworkGain SampleGains(const ChannelModel& model, std::uint64_t seed,
                        std::uint64_t frame_index) {
  NetworkGain out;
  out.gains.resize(model.users());
  for (int i = 0; i < model.users(); ++i) {
    const double u = CounterUniform(seed, frame_index, static_cast<std::uint64_t>(i));
    out.gains[i] = -model.mean_gain(i) * std::log(u);
  }
  return out;
}

double AchievableRate(double gain, double power, const LinkBudget& link) {
  if (gain <= 0.0 || power <= 0.0) return 0.0;
  return std::log1p(power * gain * link.GainScale()) / std::numbers::ln2;
}

std::vector<double> AchievableRates(const NetworkGain& gain,
                                    const LinkBudget& link) {
  std::vector<double> rates(gain.gains.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    rates[i] = AchievableRate(gain.gains[i], link.transmit_power, link);
  }
  return rates;
}

Quantizer::Quantizer(std::vector<double> thresholds, int feedback_bits)
    : thresholds_(std::move(thresholds)), feedback_bits_(feedback_bits) {}

Quantizer Quantizer::EqualProbability(double mean_gain, int states) {
  if (states < 1 || !std::has_single_bit(static_cast<unsigned>(states))) {
    throw ConfigError("quantizer state count " + std::to_string(states) +
                      " is not a power of two");
  }
  if (!(mean_gain > 0.0)) throw ConfigError("mean_gain must be positive");
  std::vector<double> g(states + 1);
  g[0] = 0.0;
  for (int k = 1; k < states; ++k) {
    // Inverse CDF of exp(mean): -mean ln(1 - k/K).
    g[k] = -mean_gain * std::log1p(-static_cast<double>(k) / states);
  }
  g[states] = std::numeric_limits<double>::infinity();
  return Quantizer(std::move(g), std::countr_zero(static_cast<unsigned>(states)));
}

int Quantizer::Quantize(double gain) const {
  // Left-closed bins: the first threshold strictly above the gain ends the bin.
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), gain);
  const int k = static_cast<int>(it - thresholds_.begin());
  return std::clamp(k, 1, states());
}

std::vector<Quantizer> MakeQuantizers(const ChannelModel& model,
                                      int feedback_bits) {
  if (feedback_bits < 0 || feedback_bits > 16) {
    throw ConfigError("feedback_bits must be in [0, 16]");
  }
  std::vector<Quantizer> out;
  out.reserve(model.users());
  for (int i = 0; i < model.users(); ++i) {
    out.push_back(Quantizer::EqualProbability(model.mean_gain(i), 1 << feedback_bits));
  }
  return out;
}

}  // namespace taur
