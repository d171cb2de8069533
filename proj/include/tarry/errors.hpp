/*
 * Copyright (C) 2026 The tarrylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace tarry {

/// Base of every numerical failure raised by the library. The CLI maps these
/// to exit status 1; std::invalid_argument (precondition violations) maps to 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature needed more panels than QuadratureConfig::max_panels allows.
class BudgetExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ExtrapolationUnstable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroAcceptance : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonPositive : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateSpectrum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientShells : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace tarry
