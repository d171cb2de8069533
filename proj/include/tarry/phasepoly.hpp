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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tarry {

/// Exponent pair of the monomial x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;

  int degree() const { return i + j; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Ordered list of distinct non-constant monomials.
class MonomialBasis {
 public:
  /// Throws std::invalid_argument on a constant term, a negative exponent or
  /// a duplicate pair.
  explicit MonomialBasis(std::vector<Monomial> terms);

  std::size_t size() const { return terms_.size(); }
  const Monomial& operator[](std::size_t k) const { return terms_[k]; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const std::vector<Monomial>& terms() const { return terms_; }

  /// True when no monomial involves y.
  bool is_univariate() const;
  int max_degree() const;
  int max_x_degree() const;
  int max_y_degree() const;

  friend bool operator==(const MonomialBasis&, const MonomialBasis&) = default;

 private:
  std::vector<Monomial> terms_;
};

/// The nine monomials x^3, x^2y, xy^2, y^3, x^2, xy, y^2, x, y in that order.
MonomialBasis canonical_tarry_basis();

/// All x^i y^j with 0 <= i <= n, 0 <= j <= m, i + j > 0; ordered by total
/// degree, then by decreasing power of x.
MonomialBasis general_basis(int n, int m);

/// Univariate basis x, x^2, ..., x^n embedded as (k, 0) pairs.
MonomialBasis full_univariate_basis(int n);

/// Univariate basis with the given strictly increasing positive exponents.
MonomialBasis univariate_basis(std::span<const int> degrees);

class CoefficientVector {
 public:
  /// Throws std::invalid_argument if any entry is not finite.
  explicit CoefficientVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }
  double norm() const;
  double l1_norm() const;

  CoefficientVector operator-() const;
  friend CoefficientVector operator+(const CoefficientVector& a,
                                     const CoefficientVector& b);

 private:
  std::vector<double> values_;
};

class PhasePolynomial {
 public:
  /// Throws std::invalid_argument when the lengths differ.
  PhasePolynomial(MonomialBasis basis, CoefficientVector coeffs);

  const MonomialBasis& basis() const { return basis_; }
  const CoefficientVector& coeffs() const { return coeffs_; }

  double operator()(double x, double y) const;

 private:
  MonomialBasis basis_;
  CoefficientVector coeffs_;
};

double eval_phase(const PhasePolynomial& poly, double x, double y);

/// sum_k coeffs[k-1] x^k for k = 1..n; no constant term.
double eval_phase_1d(std::span<const double> coeffs, double x);

/// Reads a JSON array of numbers. Parse failures are reported with the line
/// and column of the offending character.
std::vector<double> read_coefficient_file(const std::filesystem::path& path);

/// Reads a coefficient file and checks it has exactly nine entries.
PhasePolynomial read_tarry_polynomial(const std::filesystem::path& path);

void write_coefficient_file(const std::filesystem::path& path,
                            std::span<const double> values);

}  // namespace tarry
