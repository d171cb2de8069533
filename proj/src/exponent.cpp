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

#include "tarry/exponent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tarry/errors.hpp"

namespace tarry {

namespace {

int parse_suffix(std::string_view id, std::string_view prefix) {
  const std::string_view rest = id.substr(prefix.size());
  int v = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc{} || ptr != rest.data() + rest.size() || v < 1) {
    throw std::invalid_argument("bad phase family '" + std::string(id) + "'");
  }
  return v;
}

struct ShellPartial {
  std::vector<CompensatedSum> sum;
  std::vector<CompensatedSum> sum_sq;
  std::vector<std::vector<CompensatedSum>> strata;
  std::uint64_t accepted = 0;
  std::uint64_t dropped = 0;
  std::vector<double> alpha;
};

}  // namespace

PhaseFamily phase_family(std::string_view id) {
  if (id == "tarry") return {"tarry", canonical_tarry_basis()};
  if (id == "linear") return {"linear", full_univariate_basis(1)};
  if (id == "quadratic") return {"full1d:2", full_univariate_basis(2)};
  if (id.starts_with("monomial:")) {
    const int d = parse_suffix(id, "monomial:");
    const int degrees[] = {d};
    return {std::string(id), univariate_basis(degrees)};
  }
  if (id.starts_with("full1d:")) {
    return {std::string(id), full_univariate_basis(parse_suffix(id, "full1d:"))};
  }
  throw std::invalid_argument("unknown phase family '" + std::string(id) + "'");
}

double annulus_volume(int dim, double r_inner, double r_outer) {
  const double ball =
      std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
  return ball * (std::pow(r_outer, dim) - std::pow(r_inner, dim));
}

std::vector<TailShell> tail_annulus(const PhaseFamily& family,
                                    std::span<const int> k2s, double r_inner,
                                    double r_outer, std::uint64_t n_samples,
                                    std::uint64_t seed,
                                    const QuadratureConfig& quad, Exec exec) {
  quad.validate();
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) {
    throw std::invalid_argument("need 0 < r_inner < r_outer");
  }
  if (k2s.empty()) throw std::invalid_argument("no exponents requested");
  for (int k2 : k2s) {
    if (k2 < 0 || k2 % 2 != 0) {
      throw std::invalid_argument("k2 must be a nonnegative even integer");
    }
  }
  const std::size_t dim = family.dim();
  const std::size_t n_k = k2s.size();
  const bool need_quadrature =
      std::any_of(k2s.begin(), k2s.end(), [](int k) { return k > 0; });
  const double rin_d = std::pow(r_inner, static_cast<double>(dim));
  const double rout_d = std::pow(r_outer, static_cast<double>(dim));

  auto visit = [&](ShellPartial& part, std::size_t i) {
    if (part.sum.empty()) {
      part.sum.resize(n_k);
      part.sum_sq.resize(n_k);
      part.strata.assign(n_k, std::vector<CompensatedSum>(dim));
      part.alpha.resize(dim);
    }
    SampleStream rng(seed, i);
    const double radius =
        std::pow(rin_d + rng.uniform() * (rout_d - rin_d), 1.0 / dim);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& a : part.alpha) {
        a = rng.normal();
        norm += a * a;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    std::size_t dominant = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      part.alpha[j] *= radius / norm;
      if (std::abs(part.alpha[j]) > std::abs(part.alpha[dominant])) dominant = j;
    }
    double modulus = 1.0;
    if (need_quadrature) {
      try {
        const PhasePolynomial poly(family.basis, CoefficientVector(part.alpha));
        modulus = std::min(1.0, std::abs(unit_square_integral(poly, quad).value));
      } catch (const BudgetExceeded&) {
        ++part.dropped;
        return;
      }
    }
    ++part.accepted;
    for (std::size_t k = 0; k < n_k; ++k) {
      const double v = k2s[k] == 0 ? 1.0 : std::pow(modulus, k2s[k]);
      part.sum[k].add(v);
      part.sum_sq[k].add(v * v);
      part.strata[k][dominant].add(v);
    }
  };

  std::vector<CompensatedSum> sum(n_k);
  std::vector<CompensatedSum> sum_sq(n_k);
  std::vector<std::vector<CompensatedSum>> strata(
      n_k, std::vector<CompensatedSum>(dim));
  std::uint64_t accepted = 0;
  std::uint64_t dropped = 0;
  auto absorb = [&](const ShellPartial& p) {
    accepted += p.accepted;
    dropped += p.dropped;
    if (p.sum.empty()) return;
    for (std::size_t k = 0; k < n_k; ++k) {
      sum[k].add(p.sum[k].value());
      sum_sq[k].add(p.sum_sq[k].value());
      for (std::size_t j = 0; j < dim; ++j) strata[k][j].add(p.strata[k][j].value());
    }
  };
  if (exec == Exec::serial) {
    ShellPartial all;
    for (std::size_t i = 0; i < n_samples; ++i) visit(all, i);
    absorb(all);
  } else {
    for (const auto& p : block_partials<ShellPartial>(n_samples, visit)) absorb(p);
  }

  const double volume = annulus_volume(static_cast<int>(dim), r_inner, r_outer);
  std::vector<TailShell> shells;
  for (std::size_t k = 0; k < n_k; ++k) {
    TailShell s;
    s.R = r_inner;
    s.R_outer = r_outer;
    s.k2 = k2s[k];
    s.n_samples = n_samples;
    s.dropped = dropped;
    s.strata.assign(dim, 0.0);
    if (accepted > 0) {
      const double n = static_cast<double>(accepted);
      const double mean = sum[k].value() / n;
      const double var = std::max(0.0, sum_sq[k].value() / n - mean * mean);
      s.estimate = volume * mean;
      s.std_error = volume * std::sqrt(var / n);
      for (std::size_t j = 0; j < dim; ++j) {
        s.strata[j] = volume * strata[k][j].value() / n;
      }
    }
    shells.push_back(std::move(s));
  }
  return shells;
}

TailShell tail_shell(const PhaseFamily& family, int k2, double R,
                     std::uint64_t n_samples, std::uint64_t seed,
                     const QuadratureConfig& quad, Exec exec) {
  const int k2s[] = {k2};
  return tail_annulus(family, k2s, R, 2.0 * R, n_samples, seed, quad, exec)
      .front();
}

DecayFit decay_fit(std::span<const TailShell> shells) {
  DecayFit fit;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> sigma;
  for (const auto& s : shells) {
    if (!(s.estimate > 0.0) || !(s.R > 0.0)) {
      fit.warnings.push_back("dropped shell R=" + std::to_string(s.R) +
                             " with nonpositive estimate");
      continue;
    }
    x.push_back(std::log(s.R));
    y.push_back(std::log(s.estimate));
    sigma.push_back(s.std_error / s.estimate);
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw InsufficientShells("decay fit needs at least 3 usable shells, got " +
                             std::to_string(n));
  }
  const bool weighted =
      std::all_of(sigma.begin(), sigma.end(), [](double s) { return s > 0.0; });
  double sw = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = weighted ? 1.0 / (sigma[k] * sigma[k]) : 1.0;
    sw += w;
    sx += w * x[k];
    sy += w * y[k];
    sxx += w * x[k] * x[k];
    sxy += w * x[k] * y[k];
  }
  const double det = sw * sxx - sx * sx;
  if (!(det > 0.0)) throw InsufficientShells("shell radii are not distinct");
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  fit.shells_used = static_cast<int>(n);

  double chi2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = weighted ? 1.0 / (sigma[k] * sigma[k]) : 1.0;
    const double r = y[k] - fit.intercept - fit.slope * x[k];
    chi2 += w * r * r;
  }
  const double reduced = chi2 / static_cast<double>(n - 2);
  const double var_slope = sw / det;
  fit.slope_stderr = weighted ? std::sqrt(var_slope * std::max(1.0, reduced))
                              : std::sqrt(var_slope * reduced);
  return fit;
}

Verdict verdict(const DecayFit& fit) {
  Verdict v;
  v.fitted_total_exponent = fit.slope;
  v.margin = std::abs(fit.slope) - 2.0 * fit.slope_stderr;
  if (v.margin > 0.0) {
    v.status = fit.slope < 0.0 ? VerdictStatus::Converges : VerdictStatus::Diverges;
  }
  return v;
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Converges:
      return "Converges";
    case VerdictStatus::Diverges:
      return "Diverges";
    case VerdictStatus::Inconclusive:
      break;
  }
  return "Inconclusive";
}

VerdictStatus verdict_status_from_string(std::string_view s) {
  if (s == "Converges") return VerdictStatus::Converges;
  if (s == "Diverges") return VerdictStatus::Diverges;
  if (s == "Inconclusive") return VerdictStatus::Inconclusive;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

double complete_univariate_exponent(int n) {
  // The formula is stated for genuine polynomials of degree >= 2; at n = 1 it
  // gives 2 while |sinc|^{2k} already converges for 2k > 1.
  if (n < 2) throw std::invalid_argument("complete-case exponent needs n >= 2");
  return 1.0 + 0.5 * (n * n + n);
}

double incomplete_univariate_exponent(std::span<const int> degrees) {
  if (degrees.empty()) throw std::invalid_argument("no exponents given");
  double s = 0.0;
  int prev = 0;
  for (int d : degrees) {
    if (d <= prev) {
      throw std::invalid_argument("exponents must be positive and increasing");
    }
    s += d;
    prev = d;
  }
  return s;
}

std::vector<KnownExponent> known_exponent_table() {
  std::vector<KnownExponent> t;
  const std::string complete = "complete univariate polynomial: 1 + (n^2 + n)/2";
  for (int n = 2; n <= 4; ++n) {
    t.push_back({"1d-complete-n" + std::to_string(n),
                 complete_univariate_exponent(n), std::nullopt, std::nullopt,
                 complete});
  }
  const int cubic[] = {3};
  t.push_back({"1d-incomplete-x3", incomplete_univariate_exponent(cubic),
               std::nullopt, std::nullopt,
               "incomplete univariate polynomial: sum of exponents"});
  const int sparse[] = {1, 3};
  t.push_back({"1d-incomplete-x1-x3", incomplete_univariate_exponent(sparse),
               std::nullopt, std::nullopt,
               "incomplete univariate polynomial: sum of exponents"});
  t.push_back({"2d-tarry-cubic", 11.0, 10.0, 12.0,
               "nine-term bivariate cubic: converges at 12, diverges at 10, "
               "expected exact value 11"});
  return t;
}

PlancherelPair plancherel_check_1d(int k2, double T,
                                   const QuadratureConfig& quad) {
  if (k2 != 2) throw std::invalid_argument("plancherel check supports k2 = 2");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  quad.validate();
  // |I(-alpha)| = |I(alpha)|, so integrate over [0, T] and double.
  // |I(alpha)|^2 = sinc^2 is entire; 8 nodes per unit panel resolve it to
  // rounding.
  const GaussRule& rule = gauss_legendre(8);
  const int panels = std::max(1, static_cast<int>(std::ceil(T)));
  const double width = T / panels;
  CompensatedSum total;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    double part = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double alpha[] = {mid + 0.5 * width * rule.nodes[k]};
      const ComplexEstimate est = unit_interval_integral(alpha, quad);
      part += rule.weights[k] * std::norm(est.value);
    }
    total.add(0.5 * width * part);
  }
  return {2.0 * total.value(), 1.0};
}

}  // namespace tarry
