#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "diffkde/assembly.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"

namespace diffkde {

/// Conserved functionals of one state and their change since t = 0.
struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;        // \int u dx
  double mean = 0.0;        // \int x u dx / \int u dx
  double min_value = 0.0;   // smallest nodal coefficient
  double delta_mass = 0.0;  // m(0) - m(t)
  double delta_mean = 0.0;  // mu(0) - mu(t)

  double relative_mean_change() const noexcept { return delta_mean / mean_at_start(); }
  double mean_at_start() const noexcept { return mean + delta_mean; }
};

/// 1^T Mass u, the exact integral of the P1 interpolant.
inline double discrete_mass(std::span<const double> u, const Tridiagonal& mass_matrix) {
  if (u.size() != mass_matrix.size()) {
    throw DimensionError("state has " + std::to_string(u.size()) + " entries, mass matrix " +
                         std::to_string(mass_matrix.size()));
  }
  const std::vector<double> mu = mass_matrix * u;
  double s = 0.0;
  for (double v : mu) s += v;
  return s;
}

/// x^T Mass u, the exact first moment of the P1 interpolant.
inline double discrete_first_moment(std::span<const double> u, const Tridiagonal& mass_matrix,
                                    const Mesh1D& mesh) {
  if (u.size() != mass_matrix.size() || u.size() != mesh.num_nodes()) {
    throw DimensionError("state, mass matrix and mesh sizes disagree");
  }
  const std::vector<double> mu = mass_matrix * u;
  return dot<double>(mesh.nodes(), mu);
}

inline double discrete_mean(std::span<const double> u, const Tridiagonal& mass_matrix, const Mesh1D& mesh) {
  const double m = discrete_mass(u, mass_matrix);
  if (m == 0.0) throw NumericalError("mean of a state with zero mass is undefined");
  return discrete_first_moment(u, mass_matrix, mesh) / m;
}

/// Fills a diagnostics record. Without a baseline the record is its own
/// baseline, so both deltas are zero.
inline DiagnosticsRecord record(std::span<const double> u, double time, const Tridiagonal& mass_matrix,
                                const Mesh1D& mesh, const std::optional<DiagnosticsRecord>& baseline) {
  DiagnosticsRecord r;
  r.time = time;
  r.mass = discrete_mass(u, mass_matrix);
  if (r.mass == 0.0) throw NumericalError("mean of a state with zero mass is undefined");
  r.mean = discrete_first_moment(u, mass_matrix, mesh) / r.mass;
  r.min_value = u.empty() ? 0.0 : *std::min_element(u.begin(), u.end());
  if (baseline) {
    r.delta_mass = baseline->mass - r.mass;
    r.delta_mean = baseline->mean - r.mean;
  }
  return r;
}

} // namespace diffkde
