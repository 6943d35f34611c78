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

#ifndef TAUR_NUMERICS_H_
#define TAUR_NUMERICS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace taur {

// Compensated (Neumaier) accumulator. Sample averages over 10^4+ terms feed
// monotonicity checks at the 1e-12 level, so plain summation is not enough.
class CompensatedSum {
 public:
  void Add(double x);
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double Sum(std::span<const double> values);

// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once per order and cached; safe to call concurrently.
const QuadratureRule& GaussLegendre(int order);

// Integrates f over [a, b] with the given rule.
double Integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule);

// Root of a monotone function on [lo, hi] where f(lo) and f(hi) differ in
// sign. Uses TOMS 748 to near machine precision.
double FindRoot(const std::function<double(double)>& f, double lo, double hi);

}  // namespace taur

#endif  // TAUR_NUMERICS_H_
