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

#include "tarry/phasepoly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace tarry {

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

MonomialBasis::MonomialBasis(std::vector<Monomial> terms)
    : terms_(std::move(terms)) {
  std::set<std::pair<int, int>> seen;
  for (const auto& t : terms_) {
    if (t.i < 0 || t.j < 0) {
      throw std::invalid_argument("monomial exponents must be nonnegative");
    }
    if (t.degree() < 1) {
      throw std::invalid_argument("constant monomial is not allowed");
    }
    if (!seen.insert({t.i, t.j}).second) {
      throw std::invalid_argument("duplicate monomial in basis");
    }
  }
}

bool MonomialBasis::is_univariate() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Monomial& t) { return t.j == 0; });
}

int MonomialBasis::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

int MonomialBasis::max_x_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.i);
  return d;
}

int MonomialBasis::max_y_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.j);
  return d;
}

MonomialBasis canonical_tarry_basis() {
  return MonomialBasis({{3, 0}, {2, 1}, {1, 2}, {0, 3},
                        {2, 0}, {1, 1}, {0, 2},
                        {1, 0}, {0, 1}});
}

MonomialBasis general_basis(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("negative degree bound");
  std::vector<Monomial> terms;
  for (int d = 1; d <= n + m; ++d) {
    for (int i = std::min(d, n); i >= 0; --i) {
      const int j = d - i;
      if (j <= m) terms.push_back({i, j});
    }
  }
  return MonomialBasis(std::move(terms));
}

MonomialBasis full_univariate_basis(int n) {
  if (n < 1) throw std::invalid_argument("univariate degree must be >= 1");
  std::vector<Monomial> terms;
  for (int k = 1; k <= n; ++k) terms.push_back({k, 0});
  return MonomialBasis(std::move(terms));
}

MonomialBasis univariate_basis(std::span<const int> degrees) {
  std::vector<Monomial> terms;
  int prev = 0;
  for (int d : degrees) {
    if (d <= prev) {
      throw std::invalid_argument(
          "univariate exponents must be positive and strictly increasing");
    }
    terms.push_back({d, 0});
    prev = d;
  }
  return MonomialBasis(std::move(terms));
}

CoefficientVector::CoefficientVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("coefficient is not finite");
    }
  }
}

double CoefficientVector::norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

double CoefficientVector::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s;
}

CoefficientVector CoefficientVector::operator-() const {
  std::vector<double> out(values_);
  for (double& v : out) v = -v;
  return CoefficientVector(std::move(out));
}

CoefficientVector operator+(const CoefficientVector& a,
                            const CoefficientVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("coefficient vectors differ in length");
  }
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return CoefficientVector(std::move(out));
}

PhasePolynomial::PhasePolynomial(MonomialBasis basis, CoefficientVector coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (basis_.size() != coeffs_.size()) {
    throw std::invalid_argument("coefficient count does not match basis size");
  }
}

double PhasePolynomial::operator()(double x, double y) const {
  double s = 0.0;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    s += coeffs_[k] * ipow(x, basis_[k].i) * ipow(y, basis_[k].j);
  }
  return s;
}

double eval_phase(const PhasePolynomial& poly, double x, double y) {
  return poly(x, y);
}

double eval_phase_1d(std::span<const double> coeffs, double x) {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    s += coeffs[k] * ipow(x, static_cast<int>(k) + 1);
  }
  return s;
}

std::vector<double> read_coefficient_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k + 1 < pos; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << path.string() << ":" << line << ":" << col
        << ": invalid coefficient file";
    throw std::runtime_error(msg.str());
  }
  if (!doc.is_array()) {
    throw std::runtime_error(path.string() +
                             ":1:1: expected a JSON array of numbers");
  }
  std::vector<double> values;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    if (!doc[k].is_number()) {
      throw std::runtime_error(path.string() + ": entry " +
                               std::to_string(k) + " is not a number");
    }
    values.push_back(doc[k].get<double>());
  }
  return values;
}

PhasePolynomial read_tarry_polynomial(const std::filesystem::path& path) {
  auto values = read_coefficient_file(path);
  if (values.size() != 9) {
    throw std::runtime_error(path.string() + ": expected 9 coefficients, got " +
                             std::to_string(values.size()));
  }
  return PhasePolynomial(canonical_tarry_basis(),
                         CoefficientVector(std::move(values)));
}

void write_coefficient_file(const std::filesystem::path& path,
                            std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << nlohmann::json(std::vector<double>(values.begin(), values.end()))
             .dump()
      << "\n";
}

}  // namespace tarry
