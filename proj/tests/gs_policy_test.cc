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
#include <vector>

#include "doctest.h"
#include "taur/channel.h"
#include "taur/errors.h"
#include "taur/gs_policy.h"
#include "test_support.h"

namespace taur {
namespace {

using testing::LogProfile;
using testing::GapLink;
using testing::Rng;
using testing::Uniform;
using testing::UniformInt;

TEST_CASE("selection rule") {
  const UtilityProfile one = LogProfile({1.0});
  const std::vector<double> c1 = {0.4};
  CHECK(GsSelect(GsState::Uniform(1, 0.0, 0.01), c1, one) == 0);

  const UtilityProfile two = LogProfile({0.1, 0.1});
  const std::vector<double> c = {1.0, 3.0};
  CHECK(GsSelect(GsState({0.5, 0.5}, 0.01), c, two) == 1);

  // Scores 2/(1+1) = 1 and 2/(1+3) = 0.5.
  const std::vector<double> equal = {2.0, 2.0};
  CHECK(GsSelect(GsState({1.0, 3.0}, 0.01), equal, LogProfile({1.0, 1.0})) == 0);

  // Ties go to the lowest index.
  CHECK(GsSelect(GsState({1.0, 1.0, 1.0}, 0.1), std::vector<double>{1.0, 2.0, 2.0},
                 LogProfile({1.0, 1.0, 1.0})) == 1);
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(GsState({1.0}, 0.0), ConfigError);
  CHECK_THROWS_AS(GsState({1.0}, 1.0), ConfigError);
  CHECK_THROWS_AS(GsState({-1.0}, 0.5), ConfigError);
}

TEST_CASE("exponential averaging update") {
  const GsState s({1.0, 1.0}, 0.1);
  const GsState next = GsUpdate(s, 0, 3.0);
  CHECK(next.avg_rate(0) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(next.avg_rate(1) == doctest::Approx(0.9).epsilon(1e-15));

  const GsState fixed = GsUpdate(GsState({0.75, 2.0}, 0.25), 0, 0.75);
  CHECK(fixed.avg_rate(0) == 0.75);
  CHECK(fixed.avg_rate(1) == 0.75 * 2.0);

  GsState in_place({1.0, 2.0, 3.0}, 0.2);
  in_place.Update(2, 0.0);
  CHECK(in_place.avg_rate(0) == 0.8 * 1.0);
  CHECK(in_place.avg_rate(1) == 0.8 * 2.0);
  CHECK(in_place.avg_rate(2) == 0.8 * 3.0);
}

TEST_CASE("selection ignores a common rescaling of the rates") {
  Rng rng(31);
  for (int k = 0; k < 1000; ++k) {
    const int n = UniformInt(rng, 1, 8);
    std::vector<double> r(n), c(n), a(n);
    for (int i = 0; i < n; ++i) {
      r[i] = Uniform(rng, 0.0, 3.0);
      c[i] = Uniform(rng, 0.0, 5.0);
      a[i] = Uniform(rng, 0.1, 10.0);
    }
    const GsState s(r, 0.05);
    const UtilityProfile u = LogProfile(a);
    std::vector<double> scaled = c;
    const double factor = Uniform(rng, 0.01, 100.0);
    for (double& x : scaled) x *= factor;
    CHECK(GsSelect(s, c, u) == GsSelect(s, scaled, u));
  }
}

TEST_CASE("average rates stay within the observed range") {
  Rng rng(37);
  const UtilityProfile u = LogProfile({0.5, 1.0, 2.0});
  GsState s = GsState::Uniform(3, 0.0, 0.05);
  double max_rate = 0.0;
  for (int t = 0; t < 20000; ++t) {
    std::vector<double> c(3);
    for (double& x : c) {
      x = Uniform(rng, 0.0, 4.0);
      max_rate = std::max(max_rate, x);
    }
    const int i = GsSelect(s, c, u);
    s.Update(i, c[i]);
    for (double avg : s.avg_rates()) {
      CHECK(avg >= 0.0);
      CHECK(avg <= max_rate);
    }
  }
}

TEST_CASE("symmetric users are selected equally often") {
  const int n = 4;
  const int frames = 100000;
  const ChannelModel model = ChannelModel::Symmetric(n, 10.0);
  const LinkBudget link = GapLink();
  const UtilityProfile u = LogProfile(std::vector<double>(n, 0.1));
  GsState s = GsState::Uniform(n, 0.0, 0.01);
  std::vector<int> count(n, 0);
  for (int t = 0; t < frames; ++t) {
    const std::vector<double> c = AchievableRates(SampleGains(model, 5, t), link);
    const int i = GsSelect(s, c, u);
    ++count[i];
    s.Update(i, c[i]);
  }
  const double p = 1.0 / n;
  const double se = std::sqrt(p * (1.0 - p) / frames);
  for (int i = 0; i < n; ++i) CHECK(std::abs(count[i] / double(frames) - p) <= 3.0 * se);
}

}  // namespace
}  // namespace taur
