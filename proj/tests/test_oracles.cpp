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
#include <numbers>

#include "tarry/oracles.hpp"
#include "tarry/parallel.hpp"

using namespace tarry;

TEST_SUITE("oracles") {

TEST_CASE("Laplace determinant against hand-computed cases") {
  Eigen::MatrixXd m(3, 3);
  m << 2, 0, 1, 1, 3, 2, 1, 1, 2;
  CHECK(oracle::laplace_det(m) == doctest::Approx(6.0));
  CHECK(oracle::laplace_det(Eigen::MatrixXd::Identity(6, 6)) == 1.0);
  Eigen::MatrixXd swap = Eigen::MatrixXd::Identity(4, 4);
  swap.row(0).swap(swap.row(1));
  CHECK(oracle::laplace_det(swap) == -1.0);
  for (int t = 0; t < 20; ++t) {
    SampleStream rng(71, t);
    Eigen::MatrixXd r(6, 6);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
    }
    CHECK(oracle::laplace_det(r) == doctest::Approx(r.determinant()).epsilon(1e-10));
  }
}

TEST_CASE("Cauchy-Binet oracle on a 2x3 case") {
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  // Minors: (1*5-2*4) = -3, (1*6-3*4) = -6, (2*6-3*5) = -3.
  CHECK(oracle::cauchy_binet_gram(m) == doctest::Approx(9.0 + 36.0 + 9.0));
}

TEST_CASE("central differences are exact on quadratics") {
  auto f = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(1);
    y(0) = x(0) * x(0) + 3.0 * x(1);
    return y;
  };
  Eigen::VectorXd x(2);
  x << 0.5, 2.0;
  const Eigen::MatrixXd j = oracle::central_difference_jacobian(f, x, 1e-3);
  CHECK(j(0, 0) == doctest::Approx(1.0));
  CHECK(j(0, 1) == doctest::Approx(3.0));
}

TEST_CASE("Simpson and sinc oracles") {
  CHECK(oracle::sinc_modulus(0.0) == 1.0);
  CHECK(oracle::sinc_modulus(0.5) == doctest::Approx(2.0 / std::numbers::pi));
  CHECK(oracle::simpson_quadratic_modulus(0.5, 0.0, 2000) ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-10));
  CHECK_THROWS_AS(oracle::simpson_quadratic_modulus(0.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("fast criteria pass") {
  const BatteryOptions opts;
  for (int id : {4, 5, 7}) {
    const CriterionResult r = run_criterion(id, opts);
    CHECK_MESSAGE(r.passed, format_criterion(r));
    CHECK(r.gating);
  }
  CHECK_THROWS_AS(run_criterion(0, opts), std::invalid_argument);
  CHECK_THROWS_AS(run_criterion(kCriterionCount + 1, opts), std::invalid_argument);
  CriterionResult r;
  r.id = 3;
  r.name = "x";
  r.passed = true;
  CHECK(format_criterion(r).rfind("PASS [3] x", 0) == 0);
}

}  // TEST_SUITE
