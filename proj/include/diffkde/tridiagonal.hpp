#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "diffkde/error.hpp"

namespace diffkde {

/// Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal.
template <std::floating_point Real>
struct SymTridiagonal {
  std::vector<Real> diag;
  std::vector<Real> off;  // off[i] couples rows i and i+1

  SymTridiagonal() = default;
  SymTridiagonal(std::vector<Real> d, std::vector<Real> o) : diag(std::move(d)), off(std::move(o)) {
    if (diag.empty() || off.size() + 1 != diag.size()) {
      throw DimensionError("tridiagonal needs n >= 1 diagonal and n-1 off-diagonal entries, got " +
                           std::to_string(diag.size()) + " and " + std::to_string(off.size()));
    }
  }

  std::size_t size() const noexcept { return diag.size(); }

  Real max_abs() const noexcept {
    Real m = 0;
    for (Real v : diag) m = std::max(m, std::abs(v));
    for (Real v : off) m = std::max(m, std::abs(v));
    return m;
  }

  /// Sum of all entries: 1^T A 1.
  Real total() const noexcept {
    Real s = 0;
    for (Real v : diag) s += v;
    for (Real v : off) s += 2 * v;
    return s;
  }

  void multiply(std::span<const Real> x, std::span<Real> y) const {
    const std::size_t n = size();
    if (x.size() != n || y.size() != n) {
      throw DimensionError("tridiagonal product: matrix is " + std::to_string(n) + ", vectors are " +
                           std::to_string(x.size()) + " and " + std::to_string(y.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
      Real acc = diag[i] * x[i];
      if (i > 0) acc += off[i - 1] * x[i - 1];
      if (i + 1 < n) acc += off[i] * x[i + 1];
      y[i] = acc;
    }
  }

  std::vector<Real> operator*(std::span<const Real> x) const {
    std::vector<Real> y(size());
    multiply(x, y);
    return y;
  }

  /// this + alpha * other, entrywise.
  SymTridiagonal axpy(Real alpha, const SymTridiagonal& other) const {
    if (other.size() != size()) {
      throw DimensionError("tridiagonal sum of mismatched sizes");
    }
    SymTridiagonal out = *this;
    for (std::size_t i = 0; i < diag.size(); ++i) out.diag[i] += alpha * other.diag[i];
    for (std::size_t i = 0; i < off.size(); ++i) out.off[i] += alpha * other.off[i];
    return out;
  }
};

template <std::floating_point Real>
Real dot(std::span<const Real> x, std::span<const Real> y) {
  if (x.size() != y.size()) {
    throw DimensionError("dot product of vectors with lengths " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  Real s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

} // namespace diffkde
