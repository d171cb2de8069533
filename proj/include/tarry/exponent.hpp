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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tarry/oscquad.hpp"
#include "tarry/parallel.hpp"
#include "tarry/phasepoly.hpp"

namespace tarry {

/// Named coefficient space: the phase is sum_k alpha_k m_k over the basis.
///   "monomial:d"  alpha x^d
///   "full1d:n"    alpha_1 x + ... + alpha_n x^n
///   "tarry"       the nine-term cubic in two variables
struct PhaseFamily {
  std::string id;
  MonomialBasis basis;

  std::size_t dim() const { return basis.size(); }
};

/// Throws std::invalid_argument for an unknown id.
PhaseFamily phase_family(std::string_view id);

/// Monte Carlo estimate of the integral of |I(alpha)|^k2 over the Euclidean
/// annulus r_inner <= |alpha| <= r_outer.
struct TailShell {
  double R = 0.0;
  double R_outer = 0.0;
  int k2 = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  /// Samples whose quadrature exceeded the budget; excluded from the mean.
  std::uint64_t dropped = 0;
  /// Contribution to `estimate` of the samples whose largest |alpha_j| is at
  /// index j; sums to `estimate`.
  std::vector<double> strata;
};

/// Volume of {r_inner <= |alpha| <= r_outer} in R^dim.
double annulus_volume(int dim, double r_inner, double r_outer);

/// Shells for several exponents from one sample set: radius drawn with
/// density proportional to r^{dim-1}, direction uniform on the sphere, one
/// quadrature per sample. Monotone in k2 by construction since |I| <= 1.
std::vector<TailShell> tail_annulus(const PhaseFamily& family,
                                    std::span<const int> k2s, double r_inner,
                                    double r_outer, std::uint64_t n_samples,
                                    std::uint64_t seed,
                                    const QuadratureConfig& quad,
                                    Exec exec = Exec::parallel);

/// The dyadic shell R <= |alpha| <= 2R.
TailShell tail_shell(const PhaseFamily& family, int k2, double R,
                     std::uint64_t n_samples, std::uint64_t seed,
                     const QuadratureConfig& quad, Exec exec = Exec::parallel);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int shells_used = 0;
  std::vector<std::string> warnings;
};

/// Least squares of log(estimate) against log(R), weighted by
/// (estimate / std_error)^2 when every shell has a positive std_error. The
/// slope error is inflated by sqrt(chi^2 / dof) when that exceeds 1. Shells
/// with estimate <= 0 are dropped with a warning; throws InsufficientShells if
/// fewer than 3 remain.
DecayFit decay_fit(std::span<const TailShell> shells);

enum class VerdictStatus { Converges, Diverges, Inconclusive };

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  double fitted_total_exponent = 0.0;
  /// |slope| - 2 * slope_stderr; a decision is made only when positive.
  double margin = 0.0;
};

Verdict verdict(const DecayFit& fit);

std::string_view to_string(VerdictStatus s);
VerdictStatus verdict_status_from_string(std::string_view s);

struct KnownExponent {
  std::string case_id;
  double gamma = 0.0;
  /// Where only a bracket is known: diverges at lower, converges at upper.
  std::optional<double> lower;
  std::optional<double> upper;
  std::string provenance;
};

/// 1 + n(n+1)/2 for the complete univariate polynomial of degree n >= 2.
double complete_univariate_exponent(int n);

/// Sum of the exponents for a univariate polynomial with the given terms.
double incomplete_univariate_exponent(std::span<const int> degrees);

std::vector<KnownExponent> known_exponent_table();

struct PlancherelPair {
  double alpha_side = 0.0;
  double u_side = 0.0;
};

/// alpha_side: integral over [-T, T] of |int_0^1 e^{2 pi i alpha x} dx|^2,
/// outer Gauss-Legendre panels of unit width, inner oscillatory quadrature.
/// u_side: the squared L2 norm of the indicator of [0, 1], i.e. 1. Only
/// k2 = 2 is supported.
PlancherelPair plancherel_check_1d(int k2, double T,
                                   const QuadratureConfig& quad);

}  // namespace tarry
