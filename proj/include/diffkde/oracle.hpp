#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "diffkde/assembly.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"
#include "diffkde/sample.hpp"
#include "diffkde/solver.hpp"

namespace diffkde {

/// Cosine-series solution of the heat equation on [a, b] with homogeneous
/// Neumann conditions, started from the empirical measure of a sample:
///
///   u(x, t) = c_0 + sum_k c_k cos(k pi (x - a) / L) exp(-(k pi / L)^2 t).
class SpectralSolution {
public:
  SpectralSolution(double a, double b, std::vector<double> coefficients, double t)
      : a_(a), b_(b), coefficients_(std::move(coefficients)), t_(t) {
    const double L = b_ - a_;
    decay_.resize(coefficients_.size());
    for (std::size_t k = 0; k < decay_.size(); ++k) {
      const double wavenumber = static_cast<double>(k) * std::numbers::pi / L;
      decay_[k] = std::exp(-wavenumber * wavenumber * t_);
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double time() const noexcept { return t_; }
  std::size_t k_max() const noexcept { return coefficients_.size() - 1; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

  double operator()(double x) const {
    const double theta = std::numbers::pi * (x - a_) / (b_ - a_);
    double u = coefficients_[0];
    for (std::size_t k = 1; k < coefficients_.size(); ++k) {
      const double weight = coefficients_[k] * decay_[k];
      if (weight == 0.0) continue;
      u += weight * std::cos(static_cast<double>(k) * theta);
    }
    return u;
  }

  std::vector<double> evaluate(std::span<const double> xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
    return out;
  }

  /// \int_a^b u dx; only the constant mode contributes.
  double integral() const noexcept { return coefficients_[0] * (b_ - a_); }

  /// \int_a^b x u dx / \int_a^b u dx, integrated term by term using
  /// \int_0^L s cos(k pi s / L) ds = L^2 ((-1)^k - 1) / (k pi)^2.
  double mean() const {
    const double L = b_ - a_;
    double moment = coefficients_[0] * L * L / 2.0;
    for (std::size_t k = 1; k < coefficients_.size(); k += 2) {
      const double kpi = static_cast<double>(k) * std::numbers::pi;
      moment += coefficients_[k] * decay_[k] * (-2.0 * L * L / (kpi * kpi));
    }
    return a_ + moment / integral();
  }

private:
  double a_;
  double b_;
  std::vector<double> coefficients_;
  std::vector<double> decay_;
  double t_;
};

/// Series coefficients from exact cosine evaluations at the sample points,
/// independent of any finite-element projection.
inline SpectralSolution spectral_neumann(const DataSample& sample, double t, std::size_t k_max) {
  if (!(t > 0.0)) throw Error("spectral solution needs t > 0, got " + std::to_string(t));
  if (k_max == 0) throw SizeError("spectral solution needs k_max >= 1");
  if (sample.points.empty()) throw SizeError("sample contains no data points");
  const double L = sample.b - sample.a;
  const double n = static_cast<double>(sample.size());
  std::vector<double> c(k_max + 1, 0.0);
  c[0] = 1.0 / L;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double freq = static_cast<double>(k) * std::numbers::pi / L;
    double s = 0.0;
    for (double p : sample.points) s += std::cos(freq * (p - sample.a));
    c[k] = 2.0 / (n * L) * s;
  }
  return SpectralSolution(sample.a, sample.b, std::move(c), t);
}

/// Same stepper at dt = t_final / (100 * refinement).
inline CoefficientVector reference_run(const Mesh1D& mesh, const CoefficientVector& u0, BcKind bc, double t_final,
                                       std::size_t refinement) {
  if (refinement == 0) throw SizeError("refinement must be positive");
  SolverConfig config;
  config.bc = bc;
  config.t_final = t_final;
  config.dt = t_final / (100.0 * static_cast<double>(refinement));
  return run(mesh, u0, config).final_state();
}

/// L2([a, b]) norm of the difference of two P1 functions.
inline double l2_error(std::span<const double> u, std::span<const double> v, const Tridiagonal& mass_matrix) {
  if (u.size() != v.size() || u.size() != mass_matrix.size()) {
    throw DimensionError("l2_error: sizes " + std::to_string(u.size()) + ", " + std::to_string(v.size()) +
                         " and matrix " + std::to_string(mass_matrix.size()));
  }
  std::vector<double> d(u.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = u[i] - v[i];
  const std::vector<double> md = mass_matrix * std::span<const double>(d);
  const double sq = dot<double>(d, md);
  return std::sqrt(sq > 0.0 ? sq : 0.0);
}

inline double l2_norm(std::span<const double> u, const Tridiagonal& mass_matrix) {
  const std::vector<double> zero(u.size(), 0.0);
  return l2_error(u, zero, mass_matrix);
}

} // namespace diffkde
