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

#ifndef TAUR_ERRORS_H_
#define TAUR_ERRORS_H_

#include <stdexcept>

namespace taur {

// Invalid construction parameters or configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Function evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative solver failed to converge or produced an inconsistent state.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A power budget cannot be spent because no sample can use energy.
class DegenerateBudgetError : public NumericError {
 public:
  using NumericError::NumericError;
};

// An exhaustive search was asked for an instance above its enumeration cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace taur

#endif  // TAUR_ERRORS_H_
