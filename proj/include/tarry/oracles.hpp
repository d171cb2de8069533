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

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tarry {

/// Reference computations that do not share code paths with the library
/// routines they check.
namespace oracle {

/// Determinant by Laplace expansion along rows, memoized over column subsets
/// (O(2^n n) for an n x n matrix, n <= 20).
double laplace_det(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Sum of squared r x r minors of an r x n matrix (Cauchy-Binet).
double cauchy_binet_gram(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Central differences of fn: R^n -> R^r at x.
Eigen::MatrixXd central_difference_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& x, double step);

/// Rejection-sampling volume of {u : sum sigma_i^2 u_i^2 <= 1}.
double ellipsoid_volume_mc(std::span<const double> sigma, std::uint64_t n,
                           std::uint64_t seed);

/// |sin(pi a) / (pi a)|, the modulus of the integral of e^{2 pi i a x} over
/// [0, 1].
double sinc_modulus(double a);

/// Modulus of the integral of e^{2 pi i (a x + b x^2)} over [0, 1] by a
/// composite Simpson rule on `intervals` equal pieces.
double simpson_quadratic_modulus(double a, double b, int intervals);

}  // namespace oracle

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Non-gating criteria are reported but do not fail the battery.
  bool gating = true;
  double seconds = 0.0;
  double runtime_limit = 0.0;
  std::string detail;
};

struct BatteryOptions {
  std::uint64_t seed = 20260101;
  /// Samples per shell for the nine-dimensional soft probe.
  std::uint64_t soft_probe_samples = 400;
};

/// Number of criteria in the battery.
inline constexpr int kCriterionCount = 11;

/// Runs criterion `id` (1-based) at the pinned sizes and tolerances. A
/// criterion passes when its numerical check holds and it finishes within its
/// runtime limit.
CriterionResult run_criterion(int id, const BatteryOptions& opts);

std::vector<CriterionResult> run_acceptance_battery(const BatteryOptions& opts);

/// "PASS [3] name (1.2 s): detail" style line.
std::string format_criterion(const CriterionResult& r);

}  // namespace tarry
