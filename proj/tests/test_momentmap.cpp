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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "tarry/errors.hpp"
#include "tarry/matanalysis.hpp"
#include "tarry/momentmap.hpp"
#include "tarry/oracles.hpp"
#include "tarry/parallel.hpp"

using namespace tarry;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Power sums added from the last point to the first, written out term by
/// term rather than through the library's loop.
MomentVector reversed_moments(const MomentPoint12& p) {
  MomentVector m;
  for (int k = 5; k >= 0; --k) {
    const double x = p.x(k);
    const double y = p.y(k);
    m.u[0] += x;
    m.u[1] += y;
    m.u[2] += x * x;
    m.u[3] += x * y;
    m.u[4] += y * y;
    m.u[5] += x * x * x;
    m.u[6] += x * x * y;
    m.u[7] += x * y * y;
    m.u[8] += y * y * y;
  }
  return m;
}

MomentPoint12 with_pairs(std::initializer_list<double> xy) {
  MomentPoint12 p;
  std::size_t k = 0;
  for (double v : xy) p.coords[k++] = v;
  return p;
}

}  // namespace

TEST_SUITE("momentmap") {

TEST_CASE("moments of constant points") {
  MomentPoint12 zeros;
  for (double v : moments(zeros).u) CHECK(v == 0.0);
  MomentPoint12 ones;
  ones.coords.fill(1.0);
  for (double v : moments(ones).u) CHECK(v == 6.0);
}

TEST_CASE("moments match a reversed-order summation") {
  for (int t = 0; t < 100; ++t) {
    SampleStream rng(41, t);
    const MomentPoint12 p = sample_point12(rng);
    const MomentVector a = moments(p);
    const MomentVector b = reversed_moments(p);
    for (int j = 0; j < 9; ++j) {
      CHECK(rel_err(a.u[j], b.u[j]) <= 1e-12);
      CHECK(a.u[j] >= 0.0);
      CHECK(a.u[j] <= 6.0);
    }
  }
}

TEST_CASE("difference system") {
  SampleStream rng(42, 0);
  MomentPoint24 p = sample_point24(rng);
  const MomentVector d = difference_system(p);
  const MomentVector a = moments(p.first());
  const MomentVector b = moments(p.second());
  for (int j = 0; j < 9; ++j) CHECK(d.u[j] == a.u[j] - b.u[j]);
  for (int k = 0; k < 12; ++k) p.coords[12 + k] = p.coords[k];
  for (double v : difference_system(p).u) CHECK(v == 0.0);
  for (double v : difference_system(MomentPoint24{}).u) CHECK(v == 0.0);
}

TEST_CASE("jacobian A layout") {
  SampleStream rng(43, 0);
  const MomentPoint12 p = sample_point12(rng);
  const auto a = jacobian_A(p).entries;
  REQUIRE(a.rows() == 9);
  REQUIRE(a.cols() == 12);
  for (int c = 0; c < 12; ++c) {
    CHECK(a(0, c) == (c % 2 == 0 ? 1.0 : 0.0));
    CHECK(a(1, c) == (c % 2 == 1 ? 1.0 : 0.0));
  }
  // Column of x_1: (1, 0, 2x, y, 0, 3x^2, 2xy, y^2, 0).
  const double x = p.x(0);
  const double y = p.y(0);
  CHECK(a(2, 0) == 2 * x);
  CHECK(a(3, 0) == y);
  CHECK(a(5, 0) == 3 * x * x);
  CHECK(a(6, 0) == 2 * x * y);
  CHECK(a(7, 0) == y * y);
  CHECK(a(8, 1) == 3 * y * y);

  const auto z = jacobian_A(MomentPoint12{}).entries;
  CHECK(z.bottomRows(7).isZero(0.0));
}

TEST_CASE("jacobian A0 negates the second block") {
  SampleStream rng(44, 0);
  const MomentPoint24 p = sample_point24(rng);
  const auto a0 = jacobian_A0(p).entries;
  REQUIRE(a0.cols() == 24);
  CHECK(a0.leftCols(12) == jacobian_A(p.first()).entries);
  CHECK(a0.rightCols(12) == -jacobian_A(p.second()).entries);
  const auto z = jacobian_A0(MomentPoint24{}).entries;
  CHECK(z.bottomRows(7).isZero(0.0));
  CHECK(z(0, 0) == 1.0);
  CHECK(z(0, 12) == -1.0);
}

TEST_CASE("jacobians agree with central differences") {
  auto f12 = [](const Eigen::VectorXd& x) {
    MomentPoint12 p;
    for (int k = 0; k < 12; ++k) p.coords[k] = x(k);
    const auto m = moments(p);
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(m.u.data(), 9));
  };
  for (int t = 0; t < 100; ++t) {
    SampleStream rng(45, t);
    const MomentPoint12 p = sample_point12(rng);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.coords.data(), 12);
    const Eigen::MatrixXd fd = oracle::central_difference_jacobian(f12, x, 1e-5);
    const Eigen::MatrixXd j = jacobian_A(p).entries;
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 12; ++c) {
        CHECK(std::abs(j(r, c) - fd(r, c)) <= 1e-6 * std::max(1.0, std::abs(j(r, c))));
      }
    }
  }
}

TEST_CASE("gram_det basics") {
  CHECK(gram_det(Eigen::MatrixXd::Identity(3, 5)) == doctest::Approx(1.0));
  Eigen::MatrixXd v(1, 4);
  v << 1, 2, 3, 4;
  CHECK(gram_det(v) == doctest::Approx(30.0));
  CHECK_THROWS_AS(gram_det(Eigen::MatrixXd::Ones(3, 2)), DimensionError);
  Eigen::MatrixXd dep(2, 4);
  dep << 1, 2, 3, 4, 2, 4, 6, 8;
  CHECK(gram_det(dep) == 0.0);
}

TEST_CASE("gram_det equals the Cauchy-Binet sum") {
  for (int t = 0; t < 100; ++t) {
    SampleStream rng(46, t);
    const int r = 1 + t % 4;
    const int n = r + static_cast<int>(rng.next() % (9 - r));
    Eigen::MatrixXd m(r, n);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    }
    CHECK(rel_err(gram_det(m), oracle::cauchy_binet_gram(m)) <= 1e-9);
  }
  SampleStream rng(47, 0);
  Eigen::MatrixXd m(3, 5);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  }
  CHECK(rel_err(gram_det(m), oracle::cauchy_binet_gram(m)) <= 1e-9);
}

TEST_CASE("Gram determinants of the moment Jacobians") {
  for (int t = 0; t < 50; ++t) {
    SampleStream rng(48, t);
    const MomentPoint24 p = sample_point24(rng);
    const JacobianMatrix j = jacobian_A0(p);
    const double g = gram_det(j);
    CHECK(g >= 0.0);
    CHECK(g <= std::ldexp(1.0, 52));
    CHECK(rel_err(gram_det_A0(p), g) <= 1e-12);
    const Eigen::MatrixXd dyn = j.entries;
    CHECK(rel_err(gram_det(dyn), g) <= 1e-12);
  }
}

TEST_CASE("Gram determinant is invariant under a common shift on the variety") {
  // Second point set is a permutation of the first, so the system holds;
  // shifting every point by (a, b) keeps it a solution.
  for (int t = 0; t < 20; ++t) {
    SampleStream rng(49, t);
    MomentPoint24 p;
    for (int k = 0; k < 12; ++k) p.coords[k] = rng.uniform(0.0, 0.5);
    for (int k = 0; k < 6; ++k) {
      const int src = (k + 1 + t) % 6;
      p.coords[12 + 2 * k] = p.coords[2 * src];
      p.coords[12 + 2 * k + 1] = p.coords[2 * src + 1];
    }
    for (double v : difference_system(p).u) CHECK(std::abs(v) <= 1e-15);
    MomentPoint24 q = p;
    const double a = rng.uniform(0.0, 0.5);
    const double b = rng.uniform(0.0, 0.5);
    for (int k = 0; k < 24; ++k) q.coords[k] += (k % 2 == 0) ? a : b;
    const double g = gram_det_A0(p);
    const double gq = gram_det_A0(q);
    CHECK(std::abs(gq - g) <= 1e-9 * std::max(g, 1e-300));
  }
}

TEST_CASE("selected minor") {
  SampleStream rng(50, 0);
  const MomentPoint12 p = sample_point12(rng);
  const auto a = jacobian_A(p).entries;
  const int cols[] = {0, 2, 4, 6, 8, 5, 7, 9, 11};
  const auto m = selected_minor(p);
  for (int c = 0; c < 9; ++c) CHECK(m.col(c) == a.col(cols[c]));
  CHECK(rel_err(selected_minor_det(p), oracle::laplace_det(m)) <= 1e-10);

  for (int t = 0; t < 100; ++t) {
    SampleStream r2(51, t);
    MomentPoint12 q = sample_point12(r2);
    CHECK(rel_err(selected_minor_det(q), oracle::laplace_det(selected_minor(q))) <= 1e-10);
    q.coords[2] = q.coords[0];
    q.coords[3] = q.coords[1];
    CHECK(std::abs(selected_minor_det(q)) <= 1e-12 * hadamard_bound(selected_minor(q)));
  }
}

TEST_CASE("selected minor vanishes when x6 = 0 and y3 = y4 = y5") {
  for (int t = 0; t < 20; ++t) {
    SampleStream rng(52, t);
    MomentPoint12 p = sample_point12(rng);
    p.coords[10] = 0.0;          // x6
    p.coords[5] = p.coords[7];   // y3 = y4
    p.coords[9] = p.coords[7];   // y5 = y4
    CHECK(std::abs(selected_minor_det(p)) <= 1e-12 * hadamard_bound(selected_minor(p)));
  }
}

TEST_CASE("block B") {
  SampleStream rng(53, 0);
  MomentPoint12 p = sample_point12(rng);
  const auto b = block_B(p);
  for (int i = 0; i < 5; ++i) {
    const double x = p.x(i);
    const double y = p.y(i);
    CHECK(b(0, i) == 3 * x * x);
    CHECK(b(1, i) == y * y);
    CHECK(b(2, i) == 2 * x);
    CHECK(b(3, i) == y);
    CHECK(b(4, i) == 2 * x * y);
  }
  CHECK(rel_err(block_B_det(p), oracle::laplace_det(b)) <= 1e-10);

  MomentPoint12 same = p;
  same.coords[2] = same.coords[0];
  same.coords[3] = same.coords[1];
  CHECK(std::abs(block_B_det(same)) <= 1e-14 * hadamard_bound(block_B(same)));

  MomentPoint12 line = with_pairs({0.4, 0.1, 0.4, 0.3, 0.4, 0.5, 0.4, 0.7, 0.4, 0.9, 0.2, 0.2});
  CHECK(std::abs(block_B_det(line)) <= 1e-14 * hadamard_bound(block_B(line)));
}

TEST_CASE("degeneracy scan") {
  const DegeneracyReport all = degeneracy_scan(1000, 1e300, 7);
  CHECK(all.fraction_gram == 1.0);
  CHECK(all.fraction_minor == 1.0);
  const DegeneracyReport a = degeneracy_scan(20000, 1e-6, 7);
  const DegeneracyReport b = degeneracy_scan(20000, 1e-10, 7);
  CHECK(a.fraction_gram >= b.fraction_gram);
  CHECK(a.fraction_minor >= b.fraction_minor);
  CHECK(b.fraction_minor < a.fraction_minor);
  const DegeneracyReport again = degeneracy_scan(20000, 1e-6, 7);
  CHECK(again.fraction_gram == a.fraction_gram);
  CHECK(again.fraction_minor == a.fraction_minor);
  CHECK(a.seed == 7);
  CHECK(a.threshold == 1e-6);
}

TEST_CASE("serial and parallel scans agree") {
  const DegeneracyReport s = degeneracy_scan(5000, 1e-8, 9, Exec::serial);
  const DegeneracyReport p = degeneracy_scan(5000, 1e-8, 9, Exec::parallel);
  CHECK(s.fraction_gram == p.fraction_gram);
  CHECK(s.fraction_minor == p.fraction_minor);
  const GramBoundScan gs = gram_bound_scan(3000, 1e3, 9, Exec::serial);
  const GramBoundScan gp = gram_bound_scan(3000, 1e3, 9, Exec::parallel);
  CHECK(gs.violations == gp.violations);
  CHECK(gs.max_gram == gp.max_gram);
}

TEST_CASE("gram bound scan") {
  const GramBoundScan g = gram_bound_scan(20000, std::ldexp(1.0, 52), 3);
  CHECK(g.violations == 0);
  CHECK(g.max_gram > 0.0);
  const GramBoundScan tight = gram_bound_scan(20000, 0.0, 3);
  CHECK(tight.violations == 20000);
}

}  // TEST_SUITE
