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

#ifndef TAUR_UTILITY_H_
#define TAUR_UTILITY_H_

#include <memory>
#include <string>
#include <vector>

#include "taur/channel.h"

namespace taur {

// A utility of instantaneous rate: increasing, differentiable and strictly
// concave on r >= 0, with U(0) = 0. The allocators only touch this
// interface, so any such family can be plugged in.
class Utility {
 public:
  virtual ~Utility() = default;

  // Throws DomainError for negative rates.
  virtual double Value(double rate) const = 0;
  virtual double Derivative(double rate) const = 0;
  // The r >= 0 with U'(r) = slope, or 0 when slope >= U'(0).
  virtual double InverseDerivative(double slope) const = 0;
  virtual std::string Describe() const = 0;
};

// U(r) = ln(1 + r / A). Smaller A means stronger concavity.
class LogUtility final : public Utility {
 public:
  explicit LogUtility(double concavity);

  double concavity() const { return concavity_; }

  double Value(double rate) const override;
  double Derivative(double rate) const override;
  double InverseDerivative(double slope) const override;
  std::string Describe() const override;

 private:
  double concavity_;
};

using UtilityPtr = std::shared_ptr<const Utility>;
using UtilityProfile = std::vector<UtilityPtr>;

UtilityPtr MakeLogUtility(double concavity);
UtilityProfile UniformLogProfile(int users, double concavity);

// --- Marginals in the time share, r = rho * c ---

// dU(rho c)/d rho = c U'(rho c).
double MarginalShare(const Utility& u, double rate, double share);

// The share rho >= 0 where MarginalShare equals lambda, clamped at 0.
// Throws DomainError for lambda <= 0.
double InverseMarginalShare(const Utility& u, double rate, double lambda);

// --- Energy parameterization s = rho p used by joint power control ---

// rho log2(1 + s g / (rho beta N0)); 0 when the share is 0.
// Throws DomainError for share 0 with positive energy.
double EnergyRate(double share, double energy, double gain,
                  const LinkBudget& link);

// U(EnergyRate(...)). Exposed so tests can take finite differences.
double EnergyUtility(const Utility& u, double share, double energy,
                     double gain, const LinkBudget& link);

// dU/ds at fixed share. Requires share > 0; at share = 0 and energy = 0
// returns the s -> 0 limit U'(0) g / (beta N0 ln 2), which does not depend
// on the share.
double MarginalEnergy(const Utility& u, double share, double energy,
                      double gain, const LinkBudget& link);

// dU/d rho at fixed energy. +inf as rho -> 0 when energy > 0.
double MarginalShareAtEnergy(const Utility& u, double share, double energy,
                             double gain, const LinkBudget& link);

// Energy s >= 0 where MarginalEnergy equals lambda at the given share
// (0 when even the first unit of energy is worth less than lambda).
double InverseMarginalEnergy(const Utility& u, double share, double lambda,
                             double gain, const LinkBudget& link);

// Share rho > 0 where MarginalShareAtEnergy equals lambda. The result is not
// capped at 1; callers on the simplex get rho <= 1 from the multiplier.
// Returns 0 when energy or gain is 0.
double InverseMarginalShareAtEnergy(const Utility& u, double energy,
                                    double lambda, double gain,
                                    const LinkBudget& link);

}  // namespace taur

#endif  // TAUR_UTILITY_H_
