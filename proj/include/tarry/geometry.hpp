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

#include "tarry/parallel.hpp"

namespace tarry {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box cube(std::size_t dim, double lo, double hi);
  std::size_t dim() const { return lo.size(); }
  double volume() const;
  bool contains(std::span<const double> x) const;
};

/// r functions of n variables on an axis-aligned box, r < n. `inside` may
/// restrict the domain to a subset of the box; an empty predicate means the
/// whole box.
struct ConstraintSystem {
  using EvalFn = std::function<void(std::span<const double>, std::span<double>)>;
  using JacobianFn = std::function<Eigen::MatrixXd(std::span<const double>)>;
  using InsideFn = std::function<bool(std::span<const double>)>;

  std::string id;
  int ambient_dim = 0;
  int n_constraints = 0;
  EvalFn eval;
  JacobianFn jacobian;
  Box domain;
  InsideFn inside;

  void validate() const;
};

struct SlabConfig {
  double h = 0.01;
  std::uint64_t n_samples = 1'000'000;
  /// Samples whose Gram determinant falls below eta are excluded; 0 disables
  /// the check.
  double eta = 1e-12;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SlabVolume {
  double volume = 0.0;
  double std_error = 0.0;
  std::uint64_t n_accepted = 0;
  std::uint64_t n_samples = 0;
};

struct SurfaceEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double h_used = 0.0;
  std::uint64_t n_accepted = 0;
  /// Per-h slab estimates (slab integral over (2h)^r), in h_sequence order.
  std::vector<double> h_sequence;
  std::vector<double> estimates;
  std::vector<double> estimate_std_error;
  /// Fitted d(estimate)/dh of the linear extrapolation.
  double slope = 0.0;
  /// False when successive estimates differ by more than 5 combined stderr.
  bool stable = true;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Monte Carlo volume of {x in domain : |f_j(x) - u_j| < h for all j} with
/// the Gram floor applied. stderr is the binomial standard error times the
/// box volume.
SlabVolume slab_volume(const ConstraintSystem& sys, std::span<const double> u,
                       const SlabConfig& cfg, Exec exec = Exec::parallel);

/// Slab estimates of the integral of g ds / sqrt(G) over {f = u} at each h,
/// extrapolated to h -> 0 by a weighted linear fit in h. All h use the same
/// sample set (cfg.seed). Never throws on instability; see `stable`.
SurfaceEstimate weighted_surface_report(const ConstraintSystem& sys,
                                        const Integrand& g,
                                        std::span<const double> u,
                                        const SlabConfig& cfg,
                                        std::span<const double> h_sequence,
                                        Exec exec = Exec::parallel);

/// weighted_surface_report with g = 1. Throws ExtrapolationUnstable when
/// successive estimates differ by more than 5 combined standard errors.
SurfaceEstimate surface_measure(const ConstraintSystem& sys,
                                std::span<const double> u,
                                const SlabConfig& cfg,
                                std::span<const double> h_sequence,
                                Exec exec = Exec::parallel);

/// Midpoint grid over a box in the image space.
struct UGrid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<int> cells;
};

struct CoareaResult {
  double lhs = 0.0;
  double lhs_std_error = 0.0;
  double rhs = 0.0;
  double rhs_std_error = 0.0;
};

/// lhs: plain Monte Carlo integral of g over the domain. rhs: midpoint sum over
/// the grid of the weighted surface measure, each cell estimated with slab
/// half-widths h_fractions * (smallest cell width) and an independent sample
/// stream. cfg.h is unused.
CoareaResult coarea_check(const ConstraintSystem& sys, const Integrand& g,
                          const UGrid& grid, const SlabConfig& cfg,
                          std::span<const double> h_fractions,
                          Exec exec = Exec::parallel);

struct ChangeOfVariablesResult {
  double direct = 0.0;
  double direct_std_error = 0.0;
  double transformed = 0.0;
  double transformed_std_error = 0.0;
};

/// System f(Q xi) on the preimage of the domain under x = Q xi. Its Jacobian
/// is J(Q xi) Q, so its Gram determinant is det(JQ (JQ)^t).
ConstraintSystem pull_back(const ConstraintSystem& sys,
                           const Eigen::MatrixXd& q);

/// direct: surface_measure of sys at u. transformed: |det Q| times the
/// surface measure of the pulled-back system at u, same seed.
ChangeOfVariablesResult change_of_variables_check(
    const ConstraintSystem& sys, const Eigen::MatrixXd& q,
    std::span<const double> u, const SlabConfig& cfg,
    std::span<const double> h_sequence, Exec exec = Exec::parallel);

/// f(x) = x_1 on [0,1]^n.
ConstraintSystem coordinate_plane_system(int n);

/// f(x) = |x|^2 on [lo, hi]^n.
ConstraintSystem squared_norm_system(int n, double lo, double hi);

/// The nine power-sum differences on [0,1]^24 with Jacobian A0.
ConstraintSystem tarry_difference_system();

/// Slab estimate of the surface integral of ds / sqrt(G0) over the zero set of
/// the difference system in [0,1]^24 at half-width cfg.h, excluding samples
/// with G0 < cfg.eta. Throws ZeroAcceptance when no sample is accepted.
SurfaceEstimate tarry_surface_probe(const SlabConfig& cfg,
                                    Exec exec = Exec::parallel);

/// The probe at each h of a decreasing sequence with linear extrapolation;
/// instability is reported through `stable`, not thrown.
SurfaceEstimate tarry_surface_sequence(const SlabConfig& cfg,
                                       std::span<const double> h_sequence,
                                       Exec exec = Exec::parallel);

}  // namespace tarry
