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

#include "tarry/oscquad.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tarry/errors.hpp"
#include "tarry/parallel.hpp"

namespace tarry {

namespace {

constexpr int kMaxRulePoints = 64;
constexpr double kAbsoluteFloor = 1e-14;
constexpr double kErrorFloor = 8.0 * std::numeric_limits<double>::epsilon();

GaussRule golub_welsch(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = eig.eigenvalues()(k);
    const double v0 = eig.eigenvectors()(0, k);
    rule.weights[k] = 2.0 * v0 * v0;
  }
  // Symmetrize to remove eigensolver noise.
  for (int k = 0; k < n / 2; ++k) {
    const int m = n - 1 - k;
    const double x = 0.5 * (rule.nodes[m] - rule.nodes[k]);
    const double w = 0.5 * (rule.weights[m] + rule.weights[k]);
    rule.nodes[k] = -x;
    rule.nodes[m] = x;
    rule.weights[k] = w;
    rule.weights[m] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// e^{2 pi i phase}, with the phase reduced mod 1 first.
std::complex<double> unit_phasor(double phase) {
  const double r = phase - std::nearbyint(phase);
  const double t = 2.0 * std::numbers::pi * r;
  return {std::cos(t), std::sin(t)};
}

int initial_panels(double variation, const QuadratureConfig& cfg) {
  const double n = std::ceil(cfg.panels_per_unit_frequency * variation);
  if (!(n <= static_cast<double>(cfg.max_panels))) {
    throw BudgetExceeded("phase needs " + std::to_string(n) +
                         " panels per axis; budget is " +
                         std::to_string(cfg.max_panels));
  }
  return std::max(1, static_cast<int>(n));
}

/// Mapped nodes and weights for `panels` equal panels on [0, 1].
void panel_nodes(int panels, const GaussRule& rule, std::vector<double>& x,
                 std::vector<double>& w) {
  const std::size_t q = rule.nodes.size();
  x.resize(static_cast<std::size_t>(panels) * q);
  w.resize(x.size());
  const double width = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (std::size_t k = 0; k < q; ++k) {
      x[p * q + k] = mid + 0.5 * width * rule.nodes[k];
      w[p * q + k] = 0.5 * width * rule.weights[k];
    }
  }
}

std::complex<double> interval_rule(std::span<const double> coeffs, int panels,
                                   const GaussRule& rule) {
  std::vector<double> x;
  std::vector<double> w;
  panel_nodes(panels, rule, x, w);
  const std::size_t q = rule.nodes.size();
  CompensatedComplexSum total;
  for (int p = 0; p < panels; ++p) {
    std::complex<double> part = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
      const std::size_t idx = p * q + k;
      double phase = 0.0;
      for (std::size_t c = coeffs.size(); c-- > 0;) {
        phase = (phase + coeffs[c]) * x[idx];
      }
      part += w[idx] * unit_phasor(phase);
    }
    total.add(part);
  }
  return total.value();
}

std::complex<double> square_rule(const PhasePolynomial& poly, int nx, int ny,
                                 const GaussRule& rule) {
  std::vector<double> xs;
  std::vector<double> wx;
  std::vector<double> ys;
  std::vector<double> wy;
  panel_nodes(nx, rule, xs, wx);
  panel_nodes(ny, rule, ys, wy);

  const auto& basis = poly.basis();
  const int max_j = basis.max_y_degree();
  const int max_i = basis.max_x_degree();
  const std::size_t q = rule.nodes.size();

  // Powers of every y node, row-major [node][power].
  std::vector<double> ypow(ys.size() * (max_j + 1));
  for (std::size_t k = 0; k < ys.size(); ++k) {
    double v = 1.0;
    for (int j = 0; j <= max_j; ++j) {
      ypow[k * (max_j + 1) + j] = v;
      v *= ys[k];
    }
  }

  std::vector<double> xpow(max_i + 1);
  std::vector<double> cy(max_j + 1);
  CompensatedComplexSum total;
  for (int px = 0; px < nx; ++px) {
    for (std::size_t kx = 0; kx < q; ++kx) {
      const std::size_t ix = px * q + kx;
      double v = 1.0;
      for (int i = 0; i <= max_i; ++i) {
        xpow[i] = v;
        v *= xs[ix];
      }
      std::fill(cy.begin(), cy.end(), 0.0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        cy[basis[t].j] += poly.coeffs()[t] * xpow[basis[t].i];
      }
      for (int py = 0; py < ny; ++py) {
        std::complex<double> part = 0.0;
        for (std::size_t ky = 0; ky < q; ++ky) {
          const std::size_t iy = py * q + ky;
          const double* yp = &ypow[iy * (max_j + 1)];
          double phase = 0.0;
          for (int j = 0; j <= max_j; ++j) phase += cy[j] * yp[j];
          part += wy[iy] * unit_phasor(phase);
        }
        total.add(wx[ix] * part);
      }
    }
  }
  return total.value();
}

template <class Rule>
ComplexEstimate refine(int nx, int ny, const QuadratureConfig& cfg,
                       Rule&& rule) {
  std::complex<double> coarse = rule(nx, ny);
  for (;;) {
    if (2L * nx > cfg.max_panels || 2L * ny > cfg.max_panels) {
      throw BudgetExceeded("refinement needs more than " +
                           std::to_string(cfg.max_panels) + " panels per axis");
    }
    nx *= 2;
    ny *= 2;
    const std::complex<double> fine = rule(nx, ny);
    const double diff = std::abs(fine - coarse);
    if (diff <= std::max(cfg.refinement_tolerance * std::abs(fine),
                         kAbsoluteFloor)) {
      return {fine, std::max(diff, kErrorFloor)};
    }
    coarse = fine;
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (base_points_per_panel < 4 || base_points_per_panel > kMaxRulePoints) {
    throw std::invalid_argument("base_points_per_panel must be in [4, 64]");
  }
  if (!(panels_per_unit_frequency > 0.0)) {
    throw std::invalid_argument("panels_per_unit_frequency must be positive");
  }
  if (!(refinement_tolerance > 0.0)) {
    throw std::invalid_argument("refinement_tolerance must be positive");
  }
  if (max_panels < 2) throw std::invalid_argument("max_panels must be >= 2");
}

const GaussRule& gauss_legendre(int points) {
  static const std::array<GaussRule, kMaxRulePoints> table = [] {
    std::array<GaussRule, kMaxRulePoints> t;
    for (int n = 1; n <= kMaxRulePoints; ++n) t[n - 1] = golub_welsch(n);
    return t;
  }();
  if (points < 1 || points > kMaxRulePoints) {
    throw std::invalid_argument("Gauss-Legendre rule size out of range");
  }
  return table[points - 1];
}

PhaseVariation phase_variation(const PhasePolynomial& poly) {
  PhaseVariation v;
  for (std::size_t t = 0; t < poly.basis().size(); ++t) {
    const double a = std::abs(poly.coeffs()[t]);
    v.x += a * poly.basis()[t].i;
    v.y += a * poly.basis()[t].j;
  }
  return v;
}

ComplexEstimate unit_interval_integral(std::span<const double> coeffs_1d,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  if (coeffs_1d.empty()) {
    throw std::invalid_argument("univariate phase needs degree >= 1");
  }
  double variation = 0.0;
  for (std::size_t k = 0; k < coeffs_1d.size(); ++k) {
    if (!std::isfinite(coeffs_1d[k])) {
      throw std::invalid_argument("coefficient is not finite");
    }
    variation += std::abs(coeffs_1d[k]) * static_cast<double>(k + 1);
  }
  const GaussRule& rule = gauss_legendre(cfg.base_points_per_panel);
  const int n = initial_panels(variation, cfg);
  return refine(n, 1, cfg, [&](int nx, int) {
    return interval_rule(coeffs_1d, nx, rule);
  });
}

ComplexEstimate unit_square_integral(const PhasePolynomial& poly,
                                     const QuadratureConfig& cfg) {
  cfg.validate();
  if (poly.basis().is_univariate()) {
    std::vector<double> dense(poly.basis().max_x_degree(), 0.0);
    for (std::size_t t = 0; t < poly.basis().size(); ++t) {
      dense[poly.basis()[t].i - 1] += poly.coeffs()[t];
    }
    return unit_interval_integral(dense, cfg);
  }
  const GaussRule& rule = gauss_legendre(cfg.base_points_per_panel);
  const PhaseVariation var = phase_variation(poly);
  const int nx = initial_panels(var.x, cfg);
  const int ny = initial_panels(var.y, cfg);
  return refine(nx, ny, cfg, [&](int px, int py) {
    return square_rule(poly, px, py, rule);
  });
}

double modulus_power(const ComplexEstimate& est, int two_k) {
  if (two_k < 2 || two_k % 2 != 0) {
    throw std::invalid_argument("two_k must be an even integer >= 2");
  }
  const double m2 = std::norm(est.value);
  double r = 1.0;
  for (int k = 0; k < two_k / 2; ++k) r *= m2;
  return r;
}

}  // namespace tarry
