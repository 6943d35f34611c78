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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "taur/channel.h"
#include "taur/errors.h"
#include "test_support.h"

namespace taur {
namespace {

using testing::GapLink;
using testing::Rng;
using testing::Uniform;
using testing::UnitLink;

TEST_CASE("channel model rejects nonpositive means") {
  CHECK_THROWS_AS(ChannelModel({1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(ChannelModel({-1.0}), ConfigError);
  CHECK_THROWS_AS(ChannelModel(std::vector<double>{}), ConfigError);
  CHECK_THROWS_AS(ChannelModel::Symmetric(0, 1.0), ConfigError);
  CHECK_NOTHROW(ChannelModel::Symmetric(3, 0.5));
}

TEST_CASE("average SNR in dB maps to mean gain with unit noise and power") {
  const std::vector<double> db = {0.0, 10.0, 20.0};
  const ChannelModel m = ChannelModel::FromSnrDb(db, GapLink());
  CHECK(m.mean_gain(0) == doctest::Approx(1.0));
  CHECK(m.mean_gain(1) == doctest::Approx(10.0));
  CHECK(m.mean_gain(2) == doctest::Approx(100.0));
}

TEST_CASE("gain samples are a pure function of seed, frame and user") {
  const ChannelModel m = ChannelModel::Symmetric(4, 1.5);
  const NetworkGain a = SampleGains(m, 42, 1234);
  const NetworkGain b = SampleGains(m, 42, 1234);
  CHECK(a.gains == b.gains);
  CHECK(a.gains != SampleGains(m, 43, 1234).gains);
  CHECK(a.gains != SampleGains(m, 42, 1235).gains);
  // A user's draw does not depend on how many users the model has.
  const ChannelModel wider = ChannelModel::Symmetric(6, 1.5);
  const NetworkGain c = SampleGains(wider, 42, 1234);
  for (int i = 0; i < 4; ++i) CHECK(c.gains[i] == a.gains[i]);
  for (double g : a.gains) CHECK(g >= 0.0);
}

TEST_CASE("sample mean of a million draws with mean 2") {
  const ChannelModel m({2.0});
  double sum = 0.0;
  for (int t = 0; t < 1000000; ++t) sum += SampleGains(m, 7, t).gains[0];
  const double mean = sum / 1e6;
  CHECK(mean >= 1.99);
  CHECK(mean <= 2.01);
}

TEST_CASE("achievable rate") {
  const LinkBudget unit = UnitLink();
  CHECK(AchievableRate(1.0, 1.0, unit) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(AchievableRate(3.0, 1.0, unit) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(AchievableRate(1.5, 2.0, unit) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(AchievableRate(0.0, 1.0, unit) == 0.0);
  CHECK(AchievableRate(5.0, 0.0, unit) == 0.0);

  // 8.2 dB gap: 10^0.82 = 6.60693448...
  const LinkBudget gap = GapLink();
  CHECK(gap.SnrGapLinear() == doctest::Approx(6.606934480075960).epsilon(1e-14));
  CHECK(AchievableRate(6.60693448007596, 1.0, gap) == doctest::Approx(1.0).epsilon(1e-12));

  LinkBudget noisy;
  noisy.noise_power = 2.0;
  CHECK(AchievableRate(2.0, 1.0, noisy) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("link budget validation") {
  LinkBudget bad;
  bad.noise_power = 0.0;
  CHECK_THROWS_AS(bad.Validate(), ConfigError);
  bad = LinkBudget{};
  bad.snr_gap_db = -1.0;
  CHECK_THROWS_AS(bad.Validate(), ConfigError);
  bad = LinkBudget{};
  bad.transmit_power = -0.5;
  CHECK_THROWS_AS(bad.Validate(), ConfigError);
  CHECK_NOTHROW(GapLink().Validate());
}

TEST_CASE("rate is nondecreasing in gain and power and concave in power") {
  Rng rng(11);
  const LinkBudget link = GapLink();
  for (int k = 0; k < 1000; ++k) {
    const double g = Uniform(rng, 0.0, 50.0);
    const double p = Uniform(rng, 0.01, 5.0);
    const double dg = Uniform(rng, 0.0, 5.0);
    const double dp = Uniform(rng, 0.0, 1.0);
    CHECK(AchievableRate(g + dg, p, link) >= AchievableRate(g, p, link));
    CHECK(AchievableRate(g, p + dp, link) >= AchievableRate(g, p, link));
    const double h = 1e-3;
    const double second = AchievableRate(g, p + h, link) - 2.0 * AchievableRate(g, p, link) +
                          AchievableRate(g, p - h, link);
    CHECK(second <= 1e-12);
  }
}

TEST_CASE("equal-probability thresholds") {
  const double inf = std::numeric_limits<double>::infinity();
  const Quantizer one = Quantizer::EqualProbability(3.0, 1);
  REQUIRE(one.thresholds().size() == 2);
  CHECK(one.thresholds()[0] == 0.0);
  CHECK(one.thresholds()[1] == inf);
  CHECK(one.feedback_bits() == 0);

  // -ln(1 - (k-1)/4) for k = 2..4: ln(4/3), ln 2, ln 4.
  const Quantizer four = Quantizer::EqualProbability(1.0, 4);
  REQUIRE(four.states() == 4);
  CHECK(four.thresholds()[0] == 0.0);
  CHECK(four.thresholds()[1] == doctest::Approx(0.287682072451781).epsilon(1e-14));
  CHECK(four.thresholds()[2] == doctest::Approx(0.693147180559945).epsilon(1e-14));
  CHECK(four.thresholds()[3] == doctest::Approx(1.386294361119891).epsilon(1e-14));
  CHECK(four.thresholds()[4] == inf);
  CHECK(four.feedback_bits() == 2);

  const Quantizer two = Quantizer::EqualProbability(2.0, 2);
  CHECK(two.thresholds()[1] == doctest::Approx(1.386294361119891).epsilon(1e-14));

  CHECK_THROWS_AS(Quantizer::EqualProbability(1.0, 3), ConfigError);
  CHECK_THROWS_AS(Quantizer::EqualProbability(1.0, 0), ConfigError);
  CHECK_THROWS_AS(Quantizer::EqualProbability(0.0, 2), ConfigError);
}

TEST_CASE("quantize uses left-closed bins") {
  const Quantizer q = Quantizer::EqualProbability(1.0, 4);
  CHECK(q.Quantize(0.0) == 1);
  CHECK(q.Quantize(0.5) == 2);
  CHECK(q.Quantize(1e9) == 4);
  for (int k = 1; k <= 4; ++k) CHECK(q.Quantize(q.lower(k)) == k);
  CHECK(Quantize(0.7, q) == 3);
  for (int bits = 0; bits <= 3; ++bits) {
    const Quantizer any = Quantizer::EqualProbability(2.5, 1 << bits);
    CHECK(any.Quantize(0.0) == 1);
  }
}

TEST_CASE("bin frequencies are 1/K within four standard errors") {
  const ChannelModel m({1.7, 0.3});
  const std::vector<Quantizer> qs = MakeQuantizers(m, 3);
  const int samples = 100000;
  const int states = 8;
  std::vector<std::vector<int>> counts(2, std::vector<int>(states, 0));
  for (int t = 0; t < samples; ++t) {
    const NetworkGain g = SampleGains(m, 99, t);
    for (int i = 0; i < 2; ++i) ++counts[i][qs[i].Quantize(g.gains[i]) - 1];
  }
  const double p = 1.0 / states;
  const double se = std::sqrt(p * (1.0 - p) / samples);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < states; ++k) {
      CHECK(std::abs(counts[i][k] / static_cast<double>(samples) - p) <= 4.0 * se);
    }
  }
}

}  // namespace
}  // namespace taur
