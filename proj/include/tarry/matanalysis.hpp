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
#include <map>
#include <span>
#include <vector>

#include "tarry/momentmap.hpp"
#include "tarry/parallel.hpp"

namespace tarry {

/// Dyadic band of the Gram determinant G0: shell p holds
/// 2^{52-2p} <= G0 < 2^{54-2p}; values in [2^52, 2^54] also map to p = 1.
struct ShellIndex {
  int p = 1;
  friend bool operator==(const ShellIndex&, const ShellIndex&) = default;
};

/// Smallest p >= 1 with g0 >= 2^{52-2p}. Throws NonPositive for g0 <= 0 and
/// std::invalid_argument for g0 > 2^54 or NaN.
ShellIndex shell_index(double g0);

/// Lower and upper edge of shell p.
double shell_lower_edge(ShellIndex s);
double shell_upper_edge(ShellIndex s);

struct ShellHistogram {
  std::map<int, std::uint64_t> counts;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Samples with G0 == 0 (rank-deficient A0).
  std::uint64_t unclassifiable = 0;

  std::uint64_t classified() const;
};

/// Classifies uniform samples of [0,1]^24 by the shell of gram_det(A0).
ShellHistogram shell_histogram(std::uint64_t n_samples, std::uint64_t seed,
                               Exec exec = Exec::parallel);

struct HomogeneityPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = selected_minor_det(lambda p), rhs = lambda^11 selected_minor_det(p).
/// The minor's rows have degrees 0,0,1,1,1,2,2,2,2, which sum to 11.
HomogeneityPair homogeneity_check(const MomentPoint12& p, double lambda);

/// Schur test: sqrt(max row abs sum * max column abs sum) >= sigma_1. For a
/// symmetric matrix this is the max row abs sum.
double schur_bound(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Product of row Euclidean norms, >= |det m|. m must be square.
double hadamard_bound(const Eigen::Ref<const Eigen::MatrixXd>& m);

struct SingularSpectrum {
  /// Nonincreasing, length min(rows, cols).
  std::vector<double> values;
};

/// Singular values by one-sided Jacobi SVD; values below 1e-13 sigma_1 are
/// reported as exactly 0.
SingularSpectrum singular_values(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Volume of the unit ball in dimension d.
double unit_ball_volume(int d);

/// Volume of {u : sum sigma_i^2 u_i^2 <= 1} = V_d / prod sigma_i. Throws
/// DegenerateSpectrum if some sigma_i is 0.
double ellipsoid_volume(const SingularSpectrum& s);

/// (u_1 v_1, ..., u_1 v_m, ..., u_n v_m).
std::vector<double> kron(std::span<const double> u, std::span<const double> v);

}  // namespace tarry
