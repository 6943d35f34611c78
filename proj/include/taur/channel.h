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

#ifndef TAUR_CHANNEL_H_
#define TAUR_CHANNEL_H_

#include <cstdint>
#include <span>
#include <vector>

namespace taur {

double DbToLinear(double db);

// Power-budget parameters of the rate formula
//   c = log2(1 + p g / (beta N0)).
struct LinkBudget {
  double noise_power = 1.0;     // N0, linear
  double snr_gap_db = 0.0;      // beta in dB; 8.2 dB ~ BER 1e-5 with M-QAM
  double transmit_power = 1.0;  // p for constant-power policies

  // Throws ConfigError when an invariant is violated.
  void Validate() const;
  double SnrGapLinear() const { return DbToLinear(snr_gap_db); }
  // 1 / (beta N0): multiplies p g inside the log.
  double GainScale() const { return 1.0 / (SnrGapLinear() * noise_power); }
};

// Block Rayleigh fading: per-user exponential power gains, independent
// across users and frames.
class ChannelModel {
 public:
  explicit ChannelModel(std::vector<double> mean_gains);

  static ChannelModel Symmetric(int users, double mean_gain);
  // Mean gains giving the requested average SNR p E[g] / N0 per user.
  static ChannelModel FromSnrDb(std::span<const double> snr_db,
                                const LinkBudget& link);

  int users() const { return static_cast<int>(mean_gains_.size()); }
  double mean_gain(int user) const { return mean_gains_[user]; }
  std::span<const double> mean_gains() const { return mean_gains_; }

 private:
  std::vector<double> mean_gains_;
};

struct NetworkGain {
  std::vector<double> gains;
};

// Uniform draw in (0, 1), a pure function of (seed, frame, stream).
double CounterUniform(std::uint64_t seed, std::uint64_t frame,
                      std::uint64_t stream);

// Gains for one frame. Deterministic in (seed, frame_index, user), so any
// frame can be regenerated in isolation.
NetworkGain SampleGains(const ChannelModel& model, std::uint64_t seed,
                        std::uint64_t frame_index);

// log2(1 + power * gain / (beta N0)).
double AchievableRate(double gain, double power, const LinkBudget& link);

// Per-user rates at the link's constant transmit power.
std::vector<double> AchievableRates(const NetworkGain& gain,
                                    const LinkBudget& link);

// Channel-state quantizer with thresholds G_1 = 0 < ... < G_{K+1} = inf.
// States are 1-based: state k covers [G_k, G_{k+1}).
class Quantizer {
 public:
  // Thresholds with equal probability 1/K per bin for an exponential gain.
  // Throws ConfigError unless K is a power of two and mean_gain > 0.
  static Quantizer EqualProbability(double mean_gain, int states);

  int feedback_bits() const { return feedback_bits_; }
  int states() const { return static_cast<int>(thresholds_.size()) - 1; }
  std::span<const double> thresholds() const { return thresholds_; }
  double lower(int state) const { return thresholds_[state - 1]; }
  double upper(int state) const { return thresholds_[state]; }

  int Quantize(double gain) const;

 private:
  Quantizer(std::vector<double> thresholds, int feedback_bits);

  std::vector<double> thresholds_;
  int feedback_bits_;
};

inline Quantizer EqualProbThresholds(double mean_gain, int states) {
  return Quantizer::EqualProbability(mean_gain, states);
}

inline int Quantize(double gain, const Quantizer& q) { return q.Quantize(gain); }

// One equal-probability quantizer per user, 2^feedback_bits states each.
std::vector<Quantizer> MakeQuantizers(const ChannelModel& model,
                                      int feedback_bits);

}  // namespace taur

#endif  // TAUR_CHANNEL_H_
