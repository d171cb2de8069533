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
#include <array>
#include <cstdint>
#include <span>

#include "tarry/parallel.hpp"

namespace tarry {

/// (x1, y1, ..., x6, y6).
struct MomentPoint12 {
  std::array<double, 12> coords{};

  double x(int k) const { return coords[2 * k]; }  // k = 0..5
  double y(int k) const { return coords[2 * k + 1]; }
};

/// (x1, y1, ..., x12, y12); the first six pairs carry a plus sign in the
/// difference system, the last six a minus sign.
struct MomentPoint24 {
  std::array<double, 24> coords{};

  MomentPoint12 first() const;
  MomentPoint12 second() const;
};

/// Power sums in the order
///   sum x, sum y, sum x^2, sum xy, sum y^2, sum x^3, sum x^2y, sum xy^2,
///   sum y^3.
struct MomentVector {
  std::array<double, 9> u{};
};

enum class JacobianKind { A, A0 };

/// Jacobian of the moment map (kind A, 9x12) or of the difference system
/// (kind A0, 9x24). Columns follow the point's coordinate order.
struct JacobianMatrix {
  using Storage = Eigen::Matrix<double, 9, Eigen::Dynamic, 0, 9, 24>;
  JacobianKind kind = JacobianKind::A;
  Storage entries;
};

MomentVector moments(const MomentPoint12& p);
MomentVector difference_system(const MomentPoint24& p);

JacobianMatrix jacobian_A(const MomentPoint12& p);
JacobianMatrix jacobian_A0(const MomentPoint24& p);

/// det(M M^t) for an r x n matrix with r <= n, via column-pivoted Householder
/// QR of M^t (product of squared diagonal entries of R). Returns exactly 0 when
/// the factorization finds M rank deficient. Throws DimensionError if r > n.
double gram_det(const Eigen::Ref<const Eigen::MatrixXd>& m);
double gram_det(const JacobianMatrix& j);

/// Fixed-size fast path for the 9x24 difference-system Jacobian.
double gram_det_A0(const MomentPoint24& p);

/// Determinant of the 9x9 submatrix of jacobian_A formed by columns
/// 1, 3, 5, 7, 9, 6, 8, 10, 12 (1-based), in that order.
double selected_minor_det(const MomentPoint12& p);
Eigen::Matrix<double, 9, 9> selected_minor(const MomentPoint12& p);

/// Determinant of the 5x5 block with rows 3x_i^2, y_i^2, 2x_i, y_i, 2x_i y_i
/// for points i = 1..5.
double block_B_det(const MomentPoint12& p);
Eigen::Matrix<double, 5, 5> block_B(const MomentPoint12& p);

struct DegeneracyReport {
  std::uint64_t n_samples = 0;
  double threshold = 0.0;
  double fraction_gram = 0.0;
  double fraction_minor = 0.0;
  std::uint64_t seed = 0;
};

/// Fraction of uniform samples of [0,1]^12 with gram_det(jacobian_A) <
/// threshold, and with |selected_minor_det| < sqrt(threshold). Strict
/// comparisons: ties count as non-degenerate.
DegeneracyReport degeneracy_scan(std::uint64_t n_samples, double threshold,
                                 std::uint64_t seed,
                                 Exec exec = Exec::parallel);

struct GramBoundScan {
  std::uint64_t n_samples = 0;
  double bound = 0.0;
  std::uint64_t violations = 0;
  double max_gram = 0.0;
  std::uint64_t seed = 0;
};

/// Counts uniform samples of [0,1]^24 with gram_det(jacobian_A0) > bound.
GramBoundScan gram_bound_scan(std::uint64_t n_samples, double bound,
                              std::uint64_t seed, Exec exec = Exec::parallel);

MomentPoint12 sample_point12(SampleStream& rng);
MomentPoint24 sample_point24(SampleStream& rng);

}  // namespace tarry
