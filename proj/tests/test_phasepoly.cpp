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

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "tarry/parallel.hpp"
#include "tarry/phasepoly.hpp"

using namespace tarry;

namespace {

PhasePolynomial tarry_poly(std::vector<double> a) {
  return PhasePolynomial(canonical_tarry_basis(), CoefficientVector(std::move(a)));
}

std::vector<double> random_coeffs(SampleStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-5.0, 5.0);
  return v;
}

}  // namespace

TEST_SUITE("phasepoly") {

TEST_CASE("canonical basis has the cubic, quadratic, linear layout") {
  const MonomialBasis b = canonical_tarry_basis();
  REQUIRE(b.size() == 9);
  int by_degree[4] = {0, 0, 0, 0};
  for (const Monomial& m : b) ++by_degree[m.degree()];
  CHECK(by_degree[3] == 4);
  CHECK(by_degree[2] == 3);
  CHECK(by_degree[1] == 2);
  CHECK(b[0] == Monomial{3, 0});
  CHECK(b[8] == Monomial{0, 1});
  const std::vector<Monomial> expected = {{3, 0}, {2, 1}, {1, 2}, {0, 3}, {2, 0},
                                          {1, 1}, {0, 2}, {1, 0}, {0, 1}};
  CHECK(b.terms() == expected);
}

TEST_CASE("general basis excludes the constant term") {
  const MonomialBasis b = general_basis(1, 1);
  const std::vector<Monomial> expected = {{1, 0}, {0, 1}, {1, 1}};
  CHECK(b.terms() == expected);
  CHECK(general_basis(3, 3).size() == 15);
  CHECK_THROWS_AS(general_basis(-1, 2), std::invalid_argument);
}

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(MonomialBasis({{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialBasis({{1, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialBasis({{-1, 2}}), std::invalid_argument);
  CHECK(full_univariate_basis(3).is_univariate());
  CHECK_FALSE(canonical_tarry_basis().is_univariate());
  const int degs[] = {1, 3};
  CHECK(univariate_basis(degs).max_degree() == 3);
}

TEST_CASE("coefficient vectors must be finite and match the basis") {
  CHECK_THROWS_AS(CoefficientVector({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(PhasePolynomial(canonical_tarry_basis(), CoefficientVector({1.0})),
                  std::invalid_argument);
  const CoefficientVector v({3.0, 4.0});
  CHECK(v.norm() == doctest::Approx(5.0));
}

TEST_CASE("eval_phase on simple coefficient vectors") {
  CHECK(eval_phase(tarry_poly(std::vector<double>(9, 0.0)), 0.3, 0.7) == 0.0);
  std::vector<double> a(9, 0.0);
  a[0] = 1.0;
  CHECK(eval_phase(tarry_poly(a), 1.0, 0.0) == 1.0);
  CHECK(eval_phase(tarry_poly(std::vector<double>(9, 1.0)), 1.0, 1.0) == 9.0);
  // x^2 y at (2, 3) is 12.
  std::vector<double> b(9, 0.0);
  b[1] = 1.0;
  CHECK(eval_phase(tarry_poly(b), 2.0, 3.0) == 12.0);
}

TEST_CASE("eval_phase_1d") {
  const double c1[] = {1.0};
  const double c2[] = {0.0, 1.0};
  const double c3[] = {1.0, 1.0};
  CHECK(eval_phase_1d(c1, 0.5) == 0.5);
  CHECK(eval_phase_1d(c2, 2.0) == 4.0);
  CHECK(eval_phase_1d(c3, 1.0) == 2.0);
}

TEST_CASE("evaluation is linear in the coefficients") {
  for (int t = 0; t < 100; ++t) {
    SampleStream rng(11, t);
    const auto a = random_coeffs(rng, 9);
    const auto b = random_coeffs(rng, 9);
    const double x = rng.uniform(-2.0, 2.0);
    const double y = rng.uniform(-2.0, 2.0);
    const CoefficientVector sum = CoefficientVector(a) + CoefficientVector(b);
    const double lhs = eval_phase(PhasePolynomial(canonical_tarry_basis(), sum), x, y);
    const double rhs = eval_phase(tarry_poly(a), x, y) + eval_phase(tarry_poly(b), x, y);
    const double scale = std::abs(eval_phase(tarry_poly(a), x, y)) +
                         std::abs(eval_phase(tarry_poly(b), x, y)) + 1.0;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
  }
}

TEST_CASE("single monomials scale with their degree") {
  const MonomialBasis b = canonical_tarry_basis();
  for (std::size_t k = 0; k < b.size(); ++k) {
    std::vector<double> a(9, 0.0);
    a[k] = 1.0;
    const PhasePolynomial p = tarry_poly(a);
    for (int t = 0; t < 20; ++t) {
      SampleStream rng(12, t);
      const double x = rng.uniform(0.1, 1.0);
      const double y = rng.uniform(0.1, 1.0);
      const double lambda = rng.uniform(0.5, 3.0);
      const double want = std::pow(lambda, b[k].degree()) * eval_phase(p, x, y);
      CHECK(eval_phase(p, lambda * x, lambda * y) ==
            doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("coefficient files round-trip and report parse positions") {
  const auto dir = std::filesystem::temp_directory_path() / "tarry_phasepoly_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  const std::vector<double> v = {1.5, -2.0, 0.1, 0, 0, 0, 0, 3e-17, 1};
  write_coefficient_file(good, v);
  CHECK(read_coefficient_file(good) == v);
  const PhasePolynomial poly = read_tarry_polynomial(good);
  const auto back = poly.coeffs().values();
  CHECK(std::vector<double>(back.begin(), back.end()) == v);

  const auto bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    out << "[1, 2,\n 3, oops]\n";
  }
  try {
    read_coefficient_file(bad);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  const auto short_file = dir / "short.json";
  write_coefficient_file(short_file, std::vector<double>{1.0, 2.0});
  CHECK_THROWS(read_tarry_polynomial(short_file));
  CHECK_THROWS(read_coefficient_file(dir / "missing.json"));
}

}  // TEST_SUITE
