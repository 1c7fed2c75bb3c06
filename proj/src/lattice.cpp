// Copyright 2026 The pvcsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pvcsp/lattice.hpp"

#include <string>
#include <utility>

#include "pvcsp/error.hpp"

namespace pvcsp::lattice {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::kDimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Integer> IntegerMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntegerMatrix IntegerMatrix::without_columns(const std::vector<bool>& drop) const {
  std::size_t kept = 0;
  for (std::size_t c = 0; c < cols_; ++c) kept += drop[c] ? 0 : 1;
  IntegerMatrix out(rows_, kept);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!drop[c]) out(r, k++) = (*this)(r, c);
    }
  }
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kDimensionMismatch, "matrix product shapes");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

std::vector<Integer> multiply(const IntegerMatrix& a, std::span<const Integer> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::kDimensionMismatch, "matrix-vector shapes");
  std::vector<Integer> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  }
  return out;
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::kDimensionMismatch, "determinant of non-square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss elimination.
  IntegerMatrix m = a;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(m(swap_row, k)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Column operation on both H and U: (c_p, c_q) <- (c_p, c_q) * [[x, -b/g], [y, a/g]].
void combine_columns(IntegerMatrix& h, IntegerMatrix& u, std::size_t p, std::size_t q,
                     const Integer& x, const Integer& y, const Integer& s, const Integer& t) {
  auto apply = [&](IntegerMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Integer new_p = x * m(r, p) + y * m(r, q);
      Integer new_q = s * m(r, p) + t * m(r, q);
      m(r, p) = std::move(new_p);
      m(r, q) = std::move(new_q);
    }
  };
  apply(h);
  apply(u);
}

void swap_columns(IntegerMatrix& m, std::size_t p, std::size_t q) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, p), m(r, q));
}

void negate_column(IntegerMatrix& m, std::size_t p) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, p) = -m(r, p);
}

// column q -= factor * column p
void subtract_column(IntegerMatrix& m, std::size_t q, std::size_t p, const Integer& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (sgn(m(r, p)) != 0) m(r, q) -= factor * m(r, p);
  }
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& a) {
  HermiteForm form{a, IntegerMatrix::identity(a.cols()), 0, {}};
  IntegerMatrix& h = form.h;
  IntegerMatrix& u = form.u;
  const std::size_t n = a.cols();

  for (std::size_t row = 0; row < a.rows() && form.rank < n; ++row) {
    const std::size_t k = form.rank;
    // Fold every entry of this row right of the pivot column into column k.
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(h(row, j)) == 0) continue;
      if (sgn(h(row, k)) == 0) {
        swap_columns(h, k, j);
        swap_columns(u, k, j);
        continue;
      }
      const Integer pa = h(row, k);
      const Integer pb = h(row, j);
      Integer g, x, y;
      if (pb % pa == 0) {
        // Plain reduction keeps the multipliers small.
        Integer q = pb / pa;
        subtract_column(h, j, k, q);
        subtract_column(u, j, k, q);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
      const Integer s = -pb / g;
      const Integer t = pa / g;
      combine_columns(h, u, k, j, x, y, s, t);
    }
    if (sgn(h(row, k)) == 0) continue;
    if (sgn(h(row, k)) < 0) {
      negate_column(h, k);
      negate_column(u, k);
    }
    // Reduce the entries left of the pivot into [0, pivot).
    for (std::size_t j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(row, j).get_mpz_t(), h(row, k).get_mpz_t());
      if (sgn(q) != 0) {
        subtract_column(h, j, k, q);
        subtract_column(u, j, k, q);
      }
    }
    form.pivot_rows.push_back(row);
    ++form.rank;
  }
  return form;
}

std::optional<AffineLattice> solve_integer_system(const IntegerMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "right-hand side has " + std::to_string(b.size()) +
                                                   " entries for " + std::to_string(a.rows()) +
                                                   " rows");
  }
  const HermiteForm form = hermite_normal_form(a);
  const std::size_t n = a.cols();
  // Forward substitution for H y = b on the pivot rows.
  std::vector<Integer> y(n);
  for (std::size_t k = 0; k < form.rank; ++k) {
    const std::size_t row = form.pivot_rows[k];
    Integer residual = b[row];
    for (std::size_t j = 0; j < k; ++j) residual -= form.h(row, j) * y[j];
    if (residual % form.h(row, k) != 0) return std::nullopt;
    y[k] = residual / form.h(row, k);
  }
  // Non-pivot rows must already be satisfied.
  if (multiply(form.h, y) != std::vector<Integer>(b.begin(), b.end())) return std::nullopt;

  AffineLattice lattice;
  lattice.particular = multiply(form.u, y);
  for (std::size_t c = form.rank; c < n; ++c) lattice.kernel.push_back(form.u.column(c));
  return lattice;
}

ExtendedValue evaluate_affine_min(std::span<const Rational> c,
                                  const std::optional<AffineLattice>& lattice) {
  if (!lattice) return ExtendedValue::plus_infinity();
  if (c.size() != lattice->particular.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "objective length " + std::to_string(c.size()) +
                                                   " != lattice dimension " +
                                                   std::to_string(lattice->particular.size()));
  }
  auto value_at = [&](const std::vector<Integer>& v) {
    Rational total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (sgn(v[i]) != 0 && sgn(c[i]) != 0) total += c[i] * Rational(v[i]);
    }
    return total;
  };
  for (const auto& v : lattice->kernel) {
    if (sgn(value_at(v)) != 0) return ExtendedValue::minus_infinity();
  }
  return ExtendedValue(value_at(lattice->particular));
}

bool check_threshold(const ExtendedValue& value, const Rational& u) {
  return value <= ExtendedValue(u);
}

}  // namespace pvcsp::lattice
