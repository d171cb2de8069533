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

#include "tarry/matanalysis.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tarry/errors.hpp"

namespace tarry {

namespace {
constexpr double kRankCutoff = 1e-13;
}

ShellIndex shell_index(double g0) {
  if (std::isnan(g0)) throw std::invalid_argument("G0 is NaN");
  if (g0 <= 0.0) throw NonPositive("shell_index needs G0 > 0");
  if (g0 > std::ldexp(1.0, 54)) {
    throw std::invalid_argument("G0 exceeds 2^54");
  }
  int p = std::max(1, static_cast<int>(std::ceil((52.0 - std::log2(g0)) / 2.0)));
  // log2 may round; settle the integer exactly with ldexp comparisons.
  while (g0 < std::ldexp(1.0, 52 - 2 * p)) ++p;
  while (p > 1 && g0 >= std::ldexp(1.0, 52 - 2 * (p - 1))) --p;
  return {p};
}

double shell_lower_edge(ShellIndex s) { return std::ldexp(1.0, 52 - 2 * s.p); }

double shell_upper_edge(ShellIndex s) { return std::ldexp(1.0, 54 - 2 * s.p); }

std::uint64_t ShellHistogram::classified() const {
  std::uint64_t n = 0;
  for (const auto& [p, c] : counts) n += c;
  return n;
}

ShellHistogram shell_histogram(std::uint64_t n_samples, std::uint64_t seed,
                               Exec exec) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  struct Partial {
    std::map<int, std::uint64_t> counts;
    std::uint64_t zero = 0;
  };
  auto visit = [&](Partial& part, std::size_t i) {
    SampleStream rng(seed, i);
    const double g0 = gram_det_A0(sample_point24(rng));
    if (g0 > 0.0) {
      ++part.counts[shell_index(g0).p];
    } else {
      ++part.zero;
    }
  };
  ShellHistogram h;
  h.n_samples = n_samples;
  h.seed = seed;
  auto absorb = [&](const Partial& part) {
    for (const auto& [p, c] : part.counts) h.counts[p] += c;
    h.unclassifiable += part.zero;
  };
  if (exec == Exec::serial) {
    Partial all;
    for (std::size_t i = 0; i < n_samples; ++i) visit(all, i);
    absorb(all);
  } else {
    for (const auto& part : block_partials<Partial>(n_samples, visit)) {
      absorb(part);
    }
  }
  return h;
}

HomogeneityPair homogeneity_check(const MomentPoint12& p, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  MomentPoint12 scaled = p;
  for (double& c : scaled.coords) c *= lambda;
  return {selected_minor_det(scaled), std::pow(lambda, 11) * selected_minor_det(p)};
}

double schur_bound(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.size() == 0) return 0.0;
  const double row = m.cwiseAbs().rowwise().sum().maxCoeff();
  const double col = m.cwiseAbs().colwise().sum().maxCoeff();
  return std::sqrt(row * col);
}

double hadamard_bound(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hadamard_bound needs a square matrix");
  }
  double b = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) b *= m.row(i).norm();
  return b;
}

SingularSpectrum singular_values(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  SingularSpectrum s;
  if (m.size() == 0) return s;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  s.values.assign(sv.data(), sv.data() + sv.size());
  const double cutoff = kRankCutoff * s.values.front();
  for (double& v : s.values) {
    if (v < cutoff) v = 0.0;
  }
  return s;
}

double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("negative dimension");
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double ellipsoid_volume(const SingularSpectrum& s) {
  double prod = 1.0;
  for (double v : s.values) {
    if (!(v > 0.0)) {
      throw DegenerateSpectrum("ellipsoid volume needs all sigma_i > 0");
    }
    prod *= v;
  }
  return unit_ball_volume(static_cast<int>(s.values.size())) / prod;
}

std::vector<double> kron(std::span<const double> u, std::span<const double> v) {
  std::vector<double> out;
  out.reserve(u.size() * v.size());
  for (double a : u) {
    for (double b : v) out.push_back(a * b);
  }
  return out;
}

}  // namespace tarry
