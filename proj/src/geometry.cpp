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

#include "tarry/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "tarry/errors.hpp"
#include "tarry/momentmap.hpp"

namespace tarry {

namespace {

/// Per-h accumulators over one sample set.
struct SlabPartial {
  std::vector<CompensatedSum> sum;
  std::vector<CompensatedSum> sum_sq;
  std::vector<std::uint64_t> hits;
  std::vector<double> x;
  std::vector<double> f;
};

struct SlabTotals {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  std::vector<std::uint64_t> hits;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return SampleStream(seed, tag).next();
}

/// One pass over the sample set; each sample is tested against every h.
SlabTotals slab_pass(const ConstraintSystem& sys, const Integrand* g,
                     std::span<const double> u, std::span<const double> hs,
                     const SlabConfig& cfg, Exec exec) {
  const std::size_t n_h = hs.size();
  const std::size_t dim = sys.domain.dim();
  const std::size_t r = static_cast<std::size_t>(sys.n_constraints);
  const double h_max = *std::max_element(hs.begin(), hs.end());

  auto visit = [&](SlabPartial& part, std::size_t i) {
    if (part.hits.empty()) {
      part.sum.resize(n_h);
      part.sum_sq.resize(n_h);
      part.hits.assign(n_h, 0);
      part.x.resize(dim);
      part.f.resize(r);
    }
    SampleStream rng(cfg.seed, i);
    for (std::size_t k = 0; k < dim; ++k) {
      part.x[k] = rng.uniform(sys.domain.lo[k], sys.domain.hi[k]);
    }
    if (sys.inside && !sys.inside(part.x)) return;
    sys.eval(part.x, part.f);
    double dist = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
      dist = std::max(dist, std::abs(part.f[j] - u[j]));
    }
    if (!(dist < h_max)) return;
    if (cfg.eta > 0.0) {
      const Eigen::MatrixXd jac = sys.jacobian(part.x);
      if (gram_det(jac) < cfg.eta) return;
    }
    const double v = g ? (*g)(part.x) : 1.0;
    for (std::size_t k = 0; k < n_h; ++k) {
      if (dist < hs[k]) {
        part.sum[k].add(v);
        part.sum_sq[k].add(v * v);
        ++part.hits[k];
      }
    }
  };

  SlabTotals totals;
  totals.sum.assign(n_h, 0.0);
  totals.sum_sq.assign(n_h, 0.0);
  totals.hits.assign(n_h, 0);
  auto absorb = [&](const SlabPartial& p, std::vector<CompensatedSum>& s,
                    std::vector<CompensatedSum>& s2) {
    if (p.hits.empty()) return;
    for (std::size_t k = 0; k < n_h; ++k) {
      s[k].add(p.sum[k].value());
      s2[k].add(p.sum_sq[k].value());
      totals.hits[k] += p.hits[k];
    }
  };
  std::vector<CompensatedSum> s(n_h);
  std::vector<CompensatedSum> s2(n_h);
  if (exec == Exec::serial) {
    SlabPartial all;
    for (std::size_t i = 0; i < cfg.n_samples; ++i) visit(all, i);
    absorb(all, s, s2);
  } else {
    for (const auto& p : block_partials<SlabPartial>(cfg.n_samples, visit)) {
      absorb(p, s, s2);
    }
  }
  for (std::size_t k = 0; k < n_h; ++k) {
    totals.sum[k] = s[k].value();
    totals.sum_sq[k] = s2[k].value();
  }
  return totals;
}

/// Mean and standard error of the box-volume-scaled sample average.
std::pair<double, double> mc_mean(double sum, double sum_sq, std::uint64_t n,
                                  double box_volume) {
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  const double var = std::max(0.0, sum_sq / dn - mean * mean);
  return {box_volume * mean, box_volume * std::sqrt(var / dn)};
}

void check_h_sequence(std::span<const double> hs) {
  if (hs.empty()) throw std::invalid_argument("h_sequence is empty");
  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (!(hs[k] > 0.0)) throw std::invalid_argument("h must be positive");
    if (k > 0 && !(hs[k] < hs[k - 1])) {
      throw std::invalid_argument("h_sequence must be strictly decreasing");
    }
  }
}

/// Covariance of the per-h estimates from one shared sample set. The slabs
/// are nested, so the cross moment of slabs k and l is the second moment of
/// the narrower one.
Eigen::MatrixXd estimate_covariance(const SlabTotals& t,
                                    std::span<const double> hs,
                                    std::uint64_t n, double box_volume,
                                    int n_constraints) {
  const std::size_t m = hs.size();
  const double dn = static_cast<double>(n);
  Eigen::MatrixXd cov(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      const std::size_t narrow = hs[k] < hs[l] ? k : l;
      const double cross = t.sum_sq[narrow] / dn;
      const double c = cross - (t.sum[k] / dn) * (t.sum[l] / dn);
      const double scale = std::pow(2.0 * hs[k], n_constraints) *
                           std::pow(2.0 * hs[l], n_constraints);
      cov(k, l) = box_volume * box_volume * c / (dn * scale);
    }
    cov(k, k) = std::max(0.0, cov(k, k));
  }
  return cov;
}

/// Weighted least-squares line through (h_k, e_k); fills value, std_error,
/// slope and the stability flag. `cov` is the covariance of the estimates.
void extrapolate(SurfaceEstimate& est, const Eigen::MatrixXd& cov) {
  const auto& h = est.h_sequence;
  const auto& e = est.estimates;
  const auto& se = est.estimate_std_error;
  const std::size_t n = h.size();

  est.stable = true;
  double scale = 0.0;
  for (double v : e) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double diff_var = cov(k, k) + cov(k + 1, k + 1) - 2.0 * cov(k, k + 1);
    const double combined = std::sqrt(std::max(0.0, diff_var));
    if (std::abs(e[k] - e[k + 1]) > 5.0 * combined + 1e-12 * scale) {
      est.stable = false;
    }
  }

  if (n == 1) {
    est.value = e[0];
    est.std_error = se[0];
    est.slope = 0.0;
    return;
  }
  const bool weighted =
      std::all_of(se.begin(), se.end(), [](double s) { return s > 0.0; });
  double sw = 0.0;
  double sx = 0.0;
  double sxx = 0.0;
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = weighted ? 1.0 / (se[k] * se[k]) : 1.0;
    sw += w[k];
    sx += w[k] * h[k];
    sxx += w[k] * h[k] * h[k];
  }
  const double det = sw * sxx - sx * sx;
  double value = 0.0;
  double slope = 0.0;
  Eigen::VectorXd c(n);
  for (std::size_t k = 0; k < n; ++k) {
    c(k) = w[k] * (sxx - sx * h[k]) / det;
    const double c_slope = w[k] * (sw * h[k] - sx) / det;
    value += c(k) * e[k];
    slope += c_slope * e[k];
  }
  est.value = std::max(0.0, value);
  est.std_error = std::sqrt(std::max(0.0, c.dot(cov * c)));
  est.slope = slope;
}

}  // namespace

Box Box::cube(std::size_t dim, double lo, double hi) {
  return Box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
  return v;
}

bool Box::contains(std::span<const double> x) const {
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  }
  return true;
}

void ConstraintSystem::validate() const {
  if (n_constraints < 1 || n_constraints >= ambient_dim) {
    throw std::invalid_argument(id + ": need 1 <= r < n");
  }
  if (domain.lo.size() != static_cast<std::size_t>(ambient_dim) ||
      domain.hi.size() != domain.lo.size()) {
    throw std::invalid_argument(id + ": domain dimension mismatch");
  }
  for (std::size_t k = 0; k < domain.lo.size(); ++k) {
    if (!(domain.lo[k] < domain.hi[k])) {
      throw std::invalid_argument(id + ": empty domain");
    }
  }
  if (!eval || !jacobian) {
    throw std::invalid_argument(id + ": eval and jacobian are required");
  }
}

void SlabConfig::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("slab h must be positive");
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
}

SlabVolume slab_volume(const ConstraintSystem& sys, std::span<const double> u,
                       const SlabConfig& cfg, Exec exec) {
  sys.validate();
  cfg.validate();
  if (u.size() != static_cast<std::size_t>(sys.n_constraints)) {
    throw DimensionError("u must have one entry per constraint");
  }
  const double h[] = {cfg.h};
  const SlabTotals t = slab_pass(sys, nullptr, u, h, cfg, exec);
  const auto [vol, se] =
      mc_mean(t.sum[0], t.sum_sq[0], cfg.n_samples, sys.domain.volume());
  return {vol, se, t.hits[0], cfg.n_samples};
}

SurfaceEstimate weighted_surface_report(const ConstraintSystem& sys,
                                        const Integrand& g,
                                        std::span<const double> u,
                                        const SlabConfig& cfg,
                                        std::span<const double> h_sequence,
                                        Exec exec) {
  sys.validate();
  if (!(cfg.eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (cfg.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  check_h_sequence(h_sequence);
  if (u.size() != static_cast<std::size_t>(sys.n_constraints)) {
    throw DimensionError("u must have one entry per constraint");
  }
  const SlabTotals t =
      slab_pass(sys, g ? &g : nullptr, u, h_sequence, cfg, exec);

  SurfaceEstimate est;
  est.h_sequence.assign(h_sequence.begin(), h_sequence.end());
  for (std::size_t k = 0; k < h_sequence.size(); ++k) {
    const auto [vol, se] =
        mc_mean(t.sum[k], t.sum_sq[k], cfg.n_samples, sys.domain.volume());
    const double scale = std::pow(2.0 * h_sequence[k], sys.n_constraints);
    est.estimates.push_back(vol / scale);
    est.estimate_std_error.push_back(se / scale);
  }
  est.h_used = h_sequence.back();
  est.n_accepted = t.hits.back();
  extrapolate(est, estimate_covariance(t, h_sequence, cfg.n_samples,
                                       sys.domain.volume(),
                                       sys.n_constraints));
  return est;
}

SurfaceEstimate surface_measure(const ConstraintSystem& sys,
                                std::span<const double> u,
                                const SlabConfig& cfg,
                                std::span<const double> h_sequence,
                                Exec exec) {
  SurfaceEstimate est =
      weighted_surface_report(sys, Integrand{}, u, cfg, h_sequence, exec);
  if (!est.stable) {
    throw ExtrapolationUnstable(sys.id +
                                ": slab estimates disagree across h beyond "
                                "5 standard errors");
  }
  return est;
}

CoareaResult coarea_check(const ConstraintSystem& sys, const Integrand& g,
                          const UGrid& grid, const SlabConfig& cfg,
                          std::span<const double> h_fractions, Exec exec) {
  sys.validate();
  const std::size_t r = static_cast<std::size_t>(sys.n_constraints);
  if (grid.lo.size() != r || grid.hi.size() != r || grid.cells.size() != r) {
    throw DimensionError("u grid must have one axis per constraint");
  }
  CoareaResult out;

  // Left side: plain Monte Carlo over the domain.
  {
    const std::uint64_t seed = derive_seed(cfg.seed, 0);
    const std::size_t dim = sys.domain.dim();
    struct Partial {
      CompensatedSum sum;
      CompensatedSum sum_sq;
      std::vector<double> x;
    };
    auto visit = [&](Partial& p, std::size_t i) {
      p.x.resize(dim);
      SampleStream rng(seed, i);
      for (std::size_t k = 0; k < dim; ++k) {
        p.x[k] = rng.uniform(sys.domain.lo[k], sys.domain.hi[k]);
      }
      if (sys.inside && !sys.inside(p.x)) return;
      const double v = g ? g(p.x) : 1.0;
      p.sum.add(v);
      p.sum_sq.add(v * v);
    };
    CompensatedSum s;
    CompensatedSum s2;
    if (exec == Exec::serial) {
      Partial all;
      for (std::size_t i = 0; i < cfg.n_samples; ++i) visit(all, i);
      s = all.sum;
      s2 = all.sum_sq;
    } else {
      for (const auto& p : block_partials<Partial>(cfg.n_samples, visit)) {
        s.add(p.sum.value());
        s2.add(p.sum_sq.value());
      }
    }
    const auto [mean, se] =
        mc_mean(s.value(), s2.value(), cfg.n_samples, sys.domain.volume());
    out.lhs = mean;
    out.lhs_std_error = se;
  }

  // Right side: midpoint rule over the u grid.
  double cell_volume = 1.0;
  double min_width = std::numeric_limits<double>::infinity();
  std::size_t n_cells = 1;
  for (std::size_t j = 0; j < r; ++j) {
    if (grid.cells[j] < 1 || !(grid.hi[j] > grid.lo[j])) {
      throw std::invalid_argument("u grid axes need >= 1 cell and hi > lo");
    }
    const double w = (grid.hi[j] - grid.lo[j]) / grid.cells[j];
    cell_volume *= w;
    min_width = std::min(min_width, w);
    n_cells *= static_cast<std::size_t>(grid.cells[j]);
  }
  std::vector<double> hs;
  for (double f : h_fractions) hs.push_back(f * min_width);

  CompensatedSum rhs;
  double rhs_var = 0.0;
  std::vector<double> u(r);
  for (std::size_t c = 0; c < n_cells; ++c) {
    std::size_t rest = c;
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t idx = rest % static_cast<std::size_t>(grid.cells[j]);
      rest /= static_cast<std::size_t>(grid.cells[j]);
      const double w = (grid.hi[j] - grid.lo[j]) / grid.cells[j];
      u[j] = grid.lo[j] + (static_cast<double>(idx) + 0.5) * w;
    }
    SlabConfig cell_cfg = cfg;
    cell_cfg.seed = derive_seed(cfg.seed, c + 1);
    const SurfaceEstimate est =
        weighted_surface_report(sys, g, u, cell_cfg, hs, exec);
    if (!est.stable) {
      throw ExtrapolationUnstable(sys.id + ": unstable slab extrapolation in "
                                           "coarea cell " +
                                  std::to_string(c));
    }
    rhs.add(cell_volume * est.value);
    rhs_var += cell_volume * cell_volume * est.std_error * est.std_error;
  }
  out.rhs = rhs.value();
  out.rhs_std_error = std::sqrt(rhs_var);
  return out;
}

ConstraintSystem pull_back(const ConstraintSystem& sys,
                           const Eigen::MatrixXd& q) {
  sys.validate();
  const int n = sys.ambient_dim;
  if (q.rows() != n || q.cols() != n) {
    throw DimensionError("Q must be n x n");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(q);
  if (!lu.isInvertible()) throw std::invalid_argument("Q is singular");
  const Eigen::MatrixXd q_inv = lu.inverse();

  Eigen::VectorXd center(n);
  Eigen::VectorXd half(n);
  for (int k = 0; k < n; ++k) {
    center(k) = 0.5 * (sys.domain.lo[k] + sys.domain.hi[k]);
    half(k) = 0.5 * (sys.domain.hi[k] - sys.domain.lo[k]);
  }
  const Eigen::VectorXd c2 = q_inv * center;
  const Eigen::VectorXd h2 = q_inv.cwiseAbs() * half;

  ConstraintSystem out;
  out.id = sys.id + "/pullback";
  out.ambient_dim = n;
  out.n_constraints = sys.n_constraints;
  out.domain.lo.resize(n);
  out.domain.hi.resize(n);
  for (int k = 0; k < n; ++k) {
    out.domain.lo[k] = c2(k) - h2(k);
    out.domain.hi[k] = c2(k) + h2(k);
  }
  auto to_x = [q](std::span<const double> xi) {
    const Eigen::Map<const Eigen::VectorXd> v(xi.data(),
                                              static_cast<Eigen::Index>(xi.size()));
    return Eigen::VectorXd(q * v);
  };
  out.eval = [sys, to_x](std::span<const double> xi, std::span<double> f) {
    const Eigen::VectorXd x = to_x(xi);
    sys.eval(std::span<const double>(x.data(), x.size()), f);
  };
  out.jacobian = [sys, to_x, q](std::span<const double> xi) {
    const Eigen::VectorXd x = to_x(xi);
    return Eigen::MatrixXd(
        sys.jacobian(std::span<const double>(x.data(), x.size())) * q);
  };
  out.inside = [sys, to_x](std::span<const double> xi) {
    const Eigen::VectorXd x = to_x(xi);
    const std::span<const double> xs(x.data(), x.size());
    return sys.domain.contains(xs) && (!sys.inside || sys.inside(xs));
  };
  return out;
}

ChangeOfVariablesResult change_of_variables_check(
    const ConstraintSystem& sys, const Eigen::MatrixXd& q,
    std::span<const double> u, const SlabConfig& cfg,
    std::span<const double> h_sequence, Exec exec) {
  const SurfaceEstimate direct = surface_measure(sys, u, cfg, h_sequence, exec);
  const ConstraintSystem pulled = pull_back(sys, q);
  const SurfaceEstimate pb = surface_measure(pulled, u, cfg, h_sequence, exec);
  const double jac = std::abs(q.determinant());
  return {direct.value, direct.std_error, jac * pb.value, jac * pb.std_error};
}

ConstraintSystem coordinate_plane_system(int n) {
  if (n < 2) throw std::invalid_argument("plane oracle needs n >= 2");
  ConstraintSystem s;
  s.id = "plane" + std::to_string(n);
  s.ambient_dim = n;
  s.n_constraints = 1;
  s.domain = Box::cube(static_cast<std::size_t>(n), 0.0, 1.0);
  s.eval = [](std::span<const double> x, std::span<double> f) { f[0] = x[0]; };
  s.jacobian = [n](std::span<const double>) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(1, n);
    j(0, 0) = 1.0;
    return j;
  };
  return s;
}

ConstraintSystem squared_norm_system(int n, double lo, double hi) {
  if (n < 2) throw std::invalid_argument("squared-norm oracle needs n >= 2");
  ConstraintSystem s;
  s.id = "sqnorm" + std::to_string(n);
  s.ambient_dim = n;
  s.n_constraints = 1;
  s.domain = Box::cube(static_cast<std::size_t>(n), lo, hi);
  s.eval = [](std::span<const double> x, std::span<double> f) {
    double v = 0.0;
    for (double c : x) v += c * c;
    f[0] = v;
  };
  s.jacobian = [n](std::span<const double> x) {
    Eigen::MatrixXd j(1, n);
    for (int k = 0; k < n; ++k) j(0, k) = 2.0 * x[k];
    return j;
  };
  return s;
}

ConstraintSystem tarry_difference_system() {
  ConstraintSystem s;
  s.id = "tarry";
  s.ambient_dim = 24;
  s.n_constraints = 9;
  s.domain = Box::cube(24, 0.0, 1.0);
  s.eval = [](std::span<const double> x, std::span<double> f) {
    MomentPoint24 p;
    std::copy(x.begin(), x.end(), p.coords.begin());
    const MomentVector d = difference_system(p);
    std::copy(d.u.begin(), d.u.end(), f.begin());
  };
  s.jacobian = [](std::span<const double> x) {
    MomentPoint24 p;
    std::copy(x.begin(), x.end(), p.coords.begin());
    return Eigen::MatrixXd(jacobian_A0(p).entries);
  };
  return s;
}

SurfaceEstimate tarry_surface_probe(const SlabConfig& cfg, Exec exec) {
  cfg.validate();
  const double h[] = {cfg.h};
  SurfaceEstimate est = tarry_surface_sequence(cfg, h, exec);
  if (est.n_accepted == 0) {
    throw ZeroAcceptance("no sample landed in the slab; increase h or samples");
  }
  return est;
}

SurfaceEstimate tarry_surface_sequence(const SlabConfig& cfg,
                                       std::span<const double> h_sequence,
                                       Exec exec) {
  const ConstraintSystem sys = tarry_difference_system();
  const std::array<double, 9> zero{};
  return weighted_surface_report(sys, Integrand{}, zero, cfg, h_sequence, exec);
}

}  // namespace tarry
