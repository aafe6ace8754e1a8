#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diffkde/assembly.hpp"
#include "diffkde/diagnostics.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"
#include "diffkde/sample.hpp"
#include "diffkde/tridiagonal.hpp"

namespace diffkde {

inline constexpr double kMinPivot = 1e-300;
inline constexpr double kMinShermanMorrisonDenominator = 1e-12;

/// Thomas-algorithm factorization of a tridiagonal matrix, reusable across
/// right-hand sides. No pivoting: intended for the SPD systems built here.
template <std::floating_point Real>
class TridiagonalFactor {
public:
  explicit TridiagonalFactor(const SymTridiagonal<Real>& t) : off_(t.off), pivot_(t.size()), upper_(t.off.size()) {
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
      Real p = t.diag[i];
      if (i > 0) p -= t.off[i - 1] * upper_[i - 1];
      if (!(std::abs(p) >= kMinPivot)) {
        throw NumericalError("tridiagonal pivot " + std::to_string(i) + " is " + std::to_string(p));
      }
      pivot_[i] = p;
      if (i + 1 < n) upper_[i] = t.off[i] / p;
    }
  }

  std::size_t size() const noexcept { return pivot_.size(); }

  std::vector<Real> solve(std::span<const Real> rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n) {
      throw DimensionError("tridiagonal solve: matrix is " + std::to_string(n) + ", rhs is " +
                           std::to_string(rhs.size()));
    }
    std::vector<Real> y(n);
    y[0] = rhs[0] / pivot_[0];
    for (std::size_t i = 1; i < n; ++i) y[i] = (rhs[i] - off_[i - 1] * y[i - 1]) / pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) y[i] -= upper_[i] * y[i + 1];
    return y;
  }

private:
  std::vector<Real> off_;
  std::vector<Real> pivot_;
  std::vector<Real> upper_;
};

template <std::floating_point Real>
std::vector<Real> solve_tridiag(const SymTridiagonal<Real>& t, std::span<const Real> rhs) {
  return TridiagonalFactor<Real>(t).solve(rhs);
}

/// Solver for (T - scale * w w^T) y = rhs with T tridiagonal.
///
/// Sherman-Morrison: with T y0 = rhs and T z = w,
///   y = y0 + scale (w^T y0) / (1 - scale w^T z) * z.
/// The factorization of T and the vector z are computed once.
template <std::floating_point Real>
class RankOneCorrectedSolver {
public:
  RankOneCorrectedSolver(const SymTridiagonal<Real>& t, std::vector<Real> w, Real scale)
      : factor_(t), w_(std::move(w)), scale_(scale) {
    if (w_.size() != t.size()) {
      throw DimensionError("rank-one vector has " + std::to_string(w_.size()) + " entries, matrix is " +
                           std::to_string(t.size()));
    }
    z_ = factor_.solve(w_);
    denominator_ = 1 - scale_ * dot<Real>(w_, z_);
    if (!(std::abs(denominator_) >= kMinShermanMorrisonDenominator)) {
      throw NumericalError("Sherman-Morrison denominator " + std::to_string(denominator_) +
                           " is too close to zero");
    }
  }

  std::vector<Real> solve(std::span<const Real> rhs) const {
    std::vector<Real> y = factor_.solve(rhs);
    const Real coef = scale_ * dot<Real>(w_, y) / denominator_;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += coef * z_[i];
    return y;
  }

private:
  TridiagonalFactor<Real> factor_;
  std::vector<Real> w_;
  std::vector<Real> z_;
  Real scale_;
  Real denominator_ = 1;
};

template <std::floating_point Real>
std::vector<Real> solve_rank_one_corrected(const SymTridiagonal<Real>& t, std::span<const Real> w, Real scale,
                                           std::span<const Real> rhs) {
  return RankOneCorrectedSolver<Real>(t, std::vector<Real>(w.begin(), w.end()), scale).solve(rhs);
}

/// One implicit-Euler step (Mass + dt K_eff) u' = Mass u with a fixed dt.
/// The system matrix is factored at construction.
class ImplicitEulerStepper {
public:
  ImplicitEulerStepper(const Tridiagonal& mass, const BcOperator& op, double dt) : mass_(mass) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw Error("time step must be positive and finite, got " + std::to_string(dt));
    }
    if (mass.size() != op.size()) {
      throw DimensionError("mass matrix and operator sizes disagree");
    }
    const Tridiagonal system = mass.axpy(dt, op.stiffness);
    if (op.correction) {
      solver_.emplace(system, op.correction->w, dt * op.correction->scale);
    } else {
      solver_.emplace(system, std::vector<double>(system.size(), 0.0), 0.0);
    }
  }

  CoefficientVector step(std::span<const double> u) const {
    const std::vector<double> rhs = mass_ * u;
    return solver_->solve(rhs);
  }

private:
  Tridiagonal mass_;
  std::optional<RankOneCorrectedSolver<double>> solver_;
};

inline CoefficientVector step_implicit_euler(std::span<const double> u, const Tridiagonal& mass,
                                             const BcOperator& op, double dt) {
  return ImplicitEulerStepper(mass, op, dt).step(u);
}

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 0.1;
  BcKind bc = BcKind::Neumann;
  /// Store every k-th state in addition to the initial and final ones.
  /// Empty means initial and final only.
  std::optional<std::size_t> snapshot_stride;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("dt must be positive, got " + std::to_string(dt));
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
      throw Error("t_final must be positive, got " + std::to_string(t_final));
    }
    if (dt > t_final) throw Error("dt must not exceed t_final");
    if (snapshot_stride && *snapshot_stride == 0) throw Error("snapshot stride must be positive");
  }

  /// ceil(t_final / dt), treating a quotient within 1e-9 of an integer as
  /// that integer so that 0.1 / 1e-3 gives 100 steps rather than 101.
  std::size_t num_steps() const {
    const double q = t_final / dt;
    const double r = std::round(q);
    if (r >= 1.0 && std::abs(q - r) <= 1e-9 * r) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(q));
  }

  /// Time after step k, with the final step landing exactly on t_final.
  double time_at(std::size_t k) const {
    return k >= num_steps() ? t_final : static_cast<double>(k) * dt;
  }
};

struct Trajectory {
  std::vector<double> times;  // one entry per step, starting at 0
  std::vector<DiagnosticsRecord> diagnostics;  // parallel to times
  std::vector<std::size_t> snapshot_steps;
  std::vector<CoefficientVector> snapshots;  // snapshots[0] is the initial condition

  const CoefficientVector& final_state() const { return snapshots.back(); }
  const DiagnosticsRecord& final_diagnostics() const { return diagnostics.back(); }
};

/// Advances u0 from t = 0 to t_final, recording diagnostics after every step.
inline Trajectory run(const Mesh1D& mesh, const CoefficientVector& u0, const SolverConfig& config) {
  config.validate();
  if (u0.size() != mesh.num_nodes()) {
    throw DimensionError("initial condition has " + std::to_string(u0.size()) + " entries, mesh has " +
                         std::to_string(mesh.num_nodes()) + " nodes");
  }
  const Tridiagonal mass = assemble_mass(mesh);
  const BcOperator op = build_bc_operator(assemble_stiffness(mesh), mesh, config.bc);
  const std::size_t n = config.num_steps();

  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.diagnostics.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.diagnostics.push_back(record(u0, 0.0, mass, mesh, std::nullopt));
  traj.snapshot_steps.push_back(0);
  traj.snapshots.push_back(u0);
  const DiagnosticsRecord baseline = traj.diagnostics.front();

  // A quotient t_final/dt that is an integer up to roundoff keeps dt for
  // every step; otherwise the last step is shortened.
  const double remainder = config.t_final - static_cast<double>(n - 1) * config.dt;
  const double last_dt = std::abs(remainder - config.dt) <= 1e-9 * config.t_final ? config.dt : remainder;
  std::optional<ImplicitEulerStepper> regular;
  std::optional<ImplicitEulerStepper> last;

  CoefficientVector u = u0;
  for (std::size_t k = 1; k <= n; ++k) {
    try {
      if (k < n || last_dt == config.dt) {
        if (!regular) regular.emplace(mass, op, config.dt);
        u = regular->step(u);
      } else {
        if (!last) last.emplace(mass, op, last_dt);
        u = last->step(u);
      }
      const double t = config.time_at(k);
      traj.times.push_back(t);
      traj.diagnostics.push_back(record(u, t, mass, mesh, baseline));
    } catch (const NumericalError& e) {
      throw StepError(e.what(), k);
    }
    if (k == n || (config.snapshot_stride && k % *config.snapshot_stride == 0)) {
      traj.snapshot_steps.push_back(k);
      traj.snapshots.push_back(u);
    }
  }
  return traj;
}

} // namespace diffkde
