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

#include <complex>
#include <span>
#include <vector>

#include "tarry/phasepoly.hpp"

namespace tarry {

/// Panel layout for the oscillatory quadrature. Panel counts scale with the
/// number of oscillations the phase can make across [0, 1] along each axis.
struct QuadratureConfig {
  int base_points_per_panel = 16;
  double panels_per_unit_frequency = 0.5;
  double refinement_tolerance = 1e-7;
  /// Upper bound on panels per axis.
  int max_panels = 1 << 16;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

struct ComplexEstimate {
  std::complex<double> value;
  double abs_error_estimate = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rules for 1..64 points, built once (Golub-Welsch) and cached.
const GaussRule& gauss_legendre(int points);

/// Oscillations of e^{2 pi i F} across the unit square along x and y: the
/// bounds sum |alpha_ij| i and sum |alpha_ij| j on max |dF/dx|, max |dF/dy|.
struct PhaseVariation {
  double x = 0.0;
  double y = 0.0;
};
PhaseVariation phase_variation(const PhasePolynomial& poly);

/// Integral of e^{2 pi i F(x,y)} over [0,1]^2. Univariate phases are
/// integrated in one dimension (the y integral is exactly 1).
///
/// The panel count starts at ceil(panels_per_unit_frequency * variation) per
/// axis and is doubled until two successive resolutions agree to
/// refinement_tolerance (relative); the returned value is the finer one and
/// the error estimate is their difference. Throws BudgetExceeded when the
/// finer resolution would need more than max_panels per axis.
ComplexEstimate unit_square_integral(const PhasePolynomial& poly,
                                     const QuadratureConfig& cfg);

/// Integral of e^{2 pi i (c_1 x + c_2 x^2 + ... )} over [0,1]; coeffs[k] is
/// the coefficient of x^{k+1}.
ComplexEstimate unit_interval_integral(std::span<const double> coeffs_1d,
                                       const QuadratureConfig& cfg);

/// |value|^two_k for an even two_k >= 2.
double modulus_power(const ComplexEstimate& est, int two_k);

}  // namespace tarry
