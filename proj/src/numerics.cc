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

#include "taur/numerics.h"

#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>

#include "taur/errors.h"

namespace taur {

void CompensatedSum::Add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double Sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.Add(v);
  return acc.Total();
}

namespace {

QuadratureRule BuildGaussLegendre(int order) {
  // Boost returns the nonnegative zeros in ascending order.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(order);
  QuadratureRule rule;
  auto add = [&](double x) {
    const double dp = boost::math::legendre_p_prime<double>(order, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it != 0.0) add(-*it);
  }
  for (double x : zeros) add(x);
  return rule;
}

}  // namespace

const QuadratureRule& GaussLegendre(int order) {
  if (order < 1) throw ConfigError("quadrature order must be positive");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, BuildGaussLegendre(order)).first;
  }
  return it->second;
}

double Integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  CompensatedSum acc;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    acc.Add(rule.weights[k] * f(mid + half * rule.nodes[k]));
  }
  return half * acc.Total();
}

double FindRoot(const std::function<double(double)>& f, double lo, double hi) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericError("FindRoot: bracket does not change sign");
  }
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
      max_iter);
  return 0.5 * (a + b);
}

}  // namespace taur
