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

#include "taur/utility.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "taur/errors.h"
#include "taur/numerics.h"

namespace taur {
namespace {

constexpr double kLn2 = std::numbers::ln2;

// log1p(x) - x / (1 + x), accurate for small x.
double ShareRateSlope(double x) {
  if (x < 1e-3) {
    const double x2 = x * x;
    return x2 * (0.5 - x * (2.0 / 3.0 - x * (0.75 - x * (0.8 - x * (5.0 / 6.0)))));
  }
  return std::log1p(x) - x / (1.0 + x);
}

}  // namespace

LogUtility::LogUtility(double concavity) : concavity_(concavity) {
  if (!(concavity > 0.0) || !std::isfinite(concavity)) {
    throw ConfigError("concavity A must be positive and finite");
  }
}

double LogUtility::Value(double rate) const {
  if (rate < 0.0) throw DomainError("utility of a negative rate");
  return std::log1p(rate / concavity_);
}

double LogUtility::Derivative(double rate) const {
  return 1.0 / (concavity_ + rate);
}

double LogUtility::InverseDerivative(double slope) const {
  if (!(slope > 0.0)) throw DomainError("inverse derivative needs slope > 0");
  if (slope >= 1.0 / concavity_) return 0.0;
  return std::max(0.0, 1.0 / slope - concavity_);
}

std::string LogUtility::Describe() const {
  std::ostringstream os;
  os << "log(A=" << concavity_ << ")";
  return os.str();
}

UtilityPtr MakeLogUtility(double concavity) {
  return std::make_shared<const LogUtility>(concavity);
}

UtilityProfile UniformLogProfile(int users, double concavity) {
  if (users < 1) throw ConfigError("utility profile needs >= 1 user");
  return UtilityProfile(users, MakeLogUtility(concavity));
}

double MarginalShare(const Utility& u, double rate, double share) {
  if (rate <= 0.0) return 0.0;
  return rate * u.Derivative(share * rate);
}

double InverseMarginalShare(const Utility& u, double rate, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("multiplier must be positive");
  if (rate <= 0.0) return 0.0;
  return u.InverseDerivative(lambda / rate) / rate;
}

double EnergyRate(double share, double energy, double gain,
                  const LinkBudget& link) {
  if (share <= 0.0) {
    if (energy > 0.0) throw DomainError("energy allocated to a zero share");
    return 0.0;
  }
  const double k = gain * link.GainScale();
  if (energy <= 0.0 || k <= 0.0) return 0.0;
  return share * std::log1p(energy * k / share) / kLn2;
}

double EnergyUtility(const Utility& u, double share, double energy,
                     double gain, const LinkBudget& link) {
  return u.Value(EnergyRate(share, energy, gain, link));
}

double MarginalEnergy(const Utility& u, double share, double energy,
                      double gain, const LinkBudget& link) {
  const double k = gain * link.GainScale();
  if (share <= 0.0) {
    if (energy > 0.0) throw DomainError("energy allocated to a zero share");
    return u.Derivative(0.0) * k / kLn2;
  }
  if (k <= 0.0) return 0.0;
  const double x = energy * k / share;
  const double rate = share * std::log1p(x) / kLn2;
  return u.Derivative(rate) * k / ((1.0 + x) * kLn2);
}

double MarginalShareAtEnergy(const Utility& u, double share, double energy,
                             double gain, const LinkBudget& link) {
  const double k = gain * link.GainScale();
  if (energy <= 0.0 || k <= 0.0) return 0.0;
  if (share <= 0.0) return std::numeric_limits<double>::infinity();
  const double x = energy * k / share;
  const double rate = share * std::log1p(x) / kLn2;
  return u.Derivative(rate) * ShareRateSlope(x) / kLn2;
}

double InverseMarginalEnergy(const Utility& u, double share, double lambda,
                             double gain, const LinkBudget& link) {
  if (!(lambda > 0.0)) throw DomainError("multiplier must be positive");
  const double k = gain * link.GainScale();
  if (share <= 0.0 || k <= 0.0) return 0.0;
  // Solve in the power p = s / share; the marginal is U'(r) k / ((1 + pk) ln 2).
  auto excess = [&](double power) {
    const double rate = share * std::log1p(power * k) / kLn2;
    return u.Derivative(rate) * k / ((1.0 + power * k) * kLn2) - lambda;
  };
  if (excess(0.0) <= 0.0) return 0.0;
  double hi = 1.0 / k;
  for (int i = 0; excess(hi) > 0.0; ++i) {
    if (i > 2000) throw NumericError("InverseMarginalEnergy: no bracket");
    hi *= 2.0;
  }
  return share * FindRoot(excess, 0.0, hi);
}

double InverseMarginalShareAtEnergy(const Utility& u, double energy,
                                    double lambda, double gain,
                                    const LinkBudget& link) {
  if (!(lambda > 0.0)) throw DomainError("multiplier must be positive");
  const double k = gain * link.GainScale();
  if (energy <= 0.0 || k <= 0.0) return 0.0;
  auto excess = [&](double share) {
    return MarginalShareAtEnergy(u, share, energy, gain, link) - lambda;
  };
  double lo = 1.0;
  double hi = 1.0;
  if (excess(1.0) > 0.0) {
    for (int i = 0; excess(hi) > 0.0; ++i) {
      if (i > 2000) throw NumericError("InverseMarginalShareAtEnergy: no bracket");
      lo = hi;
      hi *= 2.0;
    }
  } else {
    for (int i = 0; excess(lo) <= 0.0; ++i) {
      if (i > 2000) throw NumericError("InverseMarginalShareAtEnergy: no bracket");
      hi = lo;
      lo *= 0.5;
    }
  }
  return FindRoot(excess, lo, hi);
}

}  // namespace taur
