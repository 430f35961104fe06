#pragma once

// Dense exact linear algebra over Q, sized for Chern-number matrices.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dpcob/rational.hpp"

namespace dpcob::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

inline void require_square(const Matrix& a) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw std::invalid_argument("matrix is not square");
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), Vector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  Matrix c(a.size(), Vector(b.empty() ? 0 : b[0].size(), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("matrix shapes do not match");
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  }
  return c;
}

inline Vector matvec(const Matrix& a, const Vector& x) {
  Vector y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != x.size()) throw std::invalid_argument("matrix and vector shapes do not match");
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

inline Rational determinant(Matrix a) {
  require_square(a);
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Gauss-Jordan inverse; throws std::domain_error when singular.
inline Matrix inverse(Matrix a) {
  require_square(a);
  const std::size_t n = a.size();
  Matrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational pivot = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= pivot;
      inv[c][k] /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

inline Vector solve(const Matrix& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("right-hand side has the wrong length");
  return matvec(inverse(a), b);
}

}  // namespace dpcob::linalg
