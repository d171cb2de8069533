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

#include "tarry/momentmap.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tarry/errors.hpp"

namespace tarry {

namespace {

constexpr std::array<int, 9> kSelectedColumns = {0, 2, 4, 6, 8, 5, 7, 9, 11};

/// Writes the 9 partial derivatives of the power sums with respect to x and
/// y at the point (x, y) into two columns, scaled by sign.
template <class Derived>
void fill_columns(Eigen::MatrixBase<Derived>& m, int col_x, double x, double y,
                  double sign) {
  const int cy = col_x + 1;
  m(0, col_x) = sign;
  m(0, cy) = 0.0;
  m(1, col_x) = 0.0;
  m(1, cy) = sign;
  m(2, col_x) = sign * 2.0 * x;
  m(2, cy) = 0.0;
  m(3, col_x) = sign * y;
  m(3, cy) = sign * x;
  m(4, col_x) = 0.0;
  m(4, cy) = sign * 2.0 * y;
  m(5, col_x) = sign * 3.0 * x * x;
  m(5, cy) = 0.0;
  m(6, col_x) = sign * 2.0 * x * y;
  m(6, cy) = sign * x * x;
  m(7, col_x) = sign * y * y;
  m(7, cy) = sign * 2.0 * x * y;
  m(8, col_x) = 0.0;
  m(8, cy) = sign * 3.0 * y * y;
}

template <class Derived>
double gram_det_transposed(const Eigen::MatrixBase<Derived>& mt) {
  // mt is n x r with n >= r.
  Eigen::ColPivHouseholderQR<typename Derived::PlainObject> qr(mt);
  if (qr.rank() < mt.cols()) return 0.0;
  double det = 1.0;
  const auto& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < mt.cols(); ++k) det *= r(k, k) * r(k, k);
  return det;
}

Eigen::Matrix<double, 9, 24> a0_fixed(const MomentPoint24& p) {
  Eigen::Matrix<double, 9, 24> m;
  for (int k = 0; k < 12; ++k) {
    fill_columns(m, 2 * k, p.coords[2 * k], p.coords[2 * k + 1],
                 k < 6 ? 1.0 : -1.0);
  }
  return m;
}

Eigen::Matrix<double, 9, 12> a_fixed(const MomentPoint12& p) {
  Eigen::Matrix<double, 9, 12> m;
  for (int k = 0; k < 6; ++k) fill_columns(m, 2 * k, p.x(k), p.y(k), 1.0);
  return m;
}

}  // namespace

MomentPoint12 MomentPoint24::first() const {
  MomentPoint12 p;
  std::copy(coords.begin(), coords.begin() + 12, p.coords.begin());
  return p;
}

MomentPoint12 MomentPoint24::second() const {
  MomentPoint12 p;
  std::copy(coords.begin() + 12, coords.end(), p.coords.begin());
  return p;
}

MomentVector moments(const MomentPoint12& p) {
  MomentVector v;
  auto& u = v.u;
  for (int k = 0; k < 6; ++k) {
    const double x = p.x(k);
    const double y = p.y(k);
    u[0] += x;
    u[1] += y;
    u[2] += x * x;
    u[3] += x * y;
    u[4] += y * y;
    u[5] += x * x * x;
    u[6] += x * x * y;
    u[7] += x * y * y;
    u[8] += y * y * y;
  }
  return v;
}

MomentVector difference_system(const MomentPoint24& p) {
  const MomentVector a = moments(p.first());
  const MomentVector b = moments(p.second());
  MomentVector d;
  for (int j = 0; j < 9; ++j) d.u[j] = a.u[j] - b.u[j];
  return d;
}

JacobianMatrix jacobian_A(const MomentPoint12& p) {
  return {JacobianKind::A, a_fixed(p)};
}

JacobianMatrix jacobian_A0(const MomentPoint24& p) {
  return {JacobianKind::A0, a0_fixed(p)};
}

double gram_det(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() > m.cols()) {
    throw DimensionError("gram_det needs rows <= cols");
  }
  if (m.rows() == 0) return 1.0;
  const Eigen::MatrixXd mt = m.transpose();
  return gram_det_transposed(mt);
}

double gram_det(const JacobianMatrix& j) {
  if (j.entries.cols() == 24) {
    const Eigen::Matrix<double, 24, 9> mt = j.entries.transpose();
    return gram_det_transposed(mt);
  }
  if (j.entries.cols() == 12) {
    const Eigen::Matrix<double, 12, 9> mt = j.entries.transpose();
    return gram_det_transposed(mt);
  }
  return gram_det(Eigen::MatrixXd(j.entries));
}

double gram_det_A0(const MomentPoint24& p) {
  const Eigen::Matrix<double, 24, 9> mt = a0_fixed(p).transpose();
  return gram_det_transposed(mt);
}

Eigen::Matrix<double, 9, 9> selected_minor(const MomentPoint12& p) {
  const Eigen::Matrix<double, 9, 12> a = a_fixed(p);
  Eigen::Matrix<double, 9, 9> m;
  for (int c = 0; c < 9; ++c) m.col(c) = a.col(kSelectedColumns[c]);
  return m;
}

double selected_minor_det(const MomentPoint12& p) {
  return selected_minor(p).partialPivLu().determinant();
}

Eigen::Matrix<double, 5, 5> block_B(const MomentPoint12& p) {
  Eigen::Matrix<double, 5, 5> b;
  for (int i = 0; i < 5; ++i) {
    const double x = p.x(i);
    const double y = p.y(i);
    b(0, i) = 3.0 * x * x;
    b(1, i) = y * y;
    b(2, i) = 2.0 * x;
    b(3, i) = y;
    b(4, i) = 2.0 * x * y;
  }
  return b;
}

double block_B_det(const MomentPoint12& p) {
  return block_B(p).partialPivLu().determinant();
}

MomentPoint12 sample_point12(SampleStream& rng) {
  MomentPoint12 p;
  for (double& c : p.coords) c = rng.uniform();
  return p;
}

MomentPoint24 sample_point24(SampleStream& rng) {
  MomentPoint24 p;
  for (double& c : p.coords) c = rng.uniform();
  return p;
}

DegeneracyReport degeneracy_scan(std::uint64_t n_samples, double threshold,
                                 std::uint64_t seed, Exec exec) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be > 0");
  const double minor_threshold = std::sqrt(threshold);

  struct Counts {
    std::uint64_t gram = 0;
    std::uint64_t minor = 0;
  };
  auto visit = [&](Counts& c, std::size_t i) {
    SampleStream rng(seed, i);
    const MomentPoint12 p = sample_point12(rng);
    const Eigen::Matrix<double, 12, 9> mt = a_fixed(p).transpose();
    if (gram_det_transposed(mt) < threshold) ++c.gram;
    if (std::abs(selected_minor_det(p)) < minor_threshold) ++c.minor;
  };

  Counts total;
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n_samples; ++i) visit(total, i);
  } else {
    for (const Counts& c : block_partials<Counts>(n_samples, visit)) {
      total.gram += c.gram;
      total.minor += c.minor;
    }
  }
  DegeneracyReport r;
  r.n_samples = n_samples;
  r.threshold = threshold;
  r.seed = seed;
  r.fraction_gram = static_cast<double>(total.gram) / n_samples;
  r.fraction_minor = static_cast<double>(total.minor) / n_samples;
  return r;
}

GramBoundScan gram_bound_scan(std::uint64_t n_samples, double bound,
                              std::uint64_t seed, Exec exec) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  struct Partial {
    std::uint64_t violations = 0;
    double max_gram = 0.0;
  };
  auto visit = [&](Partial& part, std::size_t i) {
    SampleStream rng(seed, i);
    const double g = gram_det_A0(sample_point24(rng));
    if (g > bound) ++part.violations;
    part.max_gram = std::max(part.max_gram, g);
  };
  Partial total;
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n_samples; ++i) visit(total, i);
  } else {
    for (const auto& p : block_partials<Partial>(n_samples, visit)) {
      total.violations += p.violations;
      total.max_gram = std::max(total.max_gram, p.max_gram);
    }
  }
  return {n_samples, bound, total.violations, total.max_gram, seed};
}

}  // namespace tarry
