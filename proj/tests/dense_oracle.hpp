#pragma once

// Test-only reference routines that share no code with the library solvers.

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace testing_oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense dense_tridiag(const std::vector<double>& diag, const std::vector<double>& off) {
  const std::size_t n = diag.size();
  Dense a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = diag[i];
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = off[i];
  }
  return a;
}

inline void subtract_rank_one(Dense& a, const std::vector<double>& w, double scale) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) a[i][j] -= scale * w[i] * w[j];
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> lu_solve(Dense a, std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (a[p][k] == 0.0) throw std::runtime_error("singular dense matrix");
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const std::vector<double>& u, const std::vector<double>& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
  return m;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

/// \int_a^b f g dx for P1 functions given by nodal values on a uniform grid,
/// using Simpson's rule per element (exact for the quadratic integrand).
inline double simpson_inner(const std::vector<double>& f, const std::vector<double>& g, double h) {
  double s = 0.0;
  for (std::size_t e = 0; e + 1 < f.size(); ++e) {
    const double fm = 0.5 * (f[e] + f[e + 1]);
    const double gm = 0.5 * (g[e] + g[e + 1]);
    s += h / 6.0 * (f[e] * g[e] + 4.0 * fm * gm + f[e + 1] * g[e + 1]);
  }
  return s;
}

/// Element-by-element hat-function integrals: mass matrix assembled densely
/// from the 2x2 reference element, independent of the library assembler.
inline Dense dense_mass(std::size_t elements, double h) {
  Dense m(elements + 1, std::vector<double>(elements + 1, 0.0));
  for (std::size_t e = 0; e < elements; ++e) {
    m[e][e] += h / 3.0;
    m[e + 1][e + 1] += h / 3.0;
    m[e][e + 1] += h / 6.0;
    m[e + 1][e] += h / 6.0;
  }
  return m;
}

inline Dense dense_stiffness(std::size_t elements, double h) {
  Dense k(elements + 1, std::vector<double>(elements + 1, 0.0));
  for (std::size_t e = 0; e < elements; ++e) {
    k[e][e] += 1.0 / h;
    k[e + 1][e + 1] += 1.0 / h;
    k[e][e + 1] -= 1.0 / h;
    k[e + 1][e] -= 1.0 / h;
  }
  return k;
}

} // namespace testing_oracle
