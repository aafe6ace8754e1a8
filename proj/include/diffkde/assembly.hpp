#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"
#include "diffkde/tridiagonal.hpp"

namespace diffkde {

using Tridiagonal = SymTridiagonal<double>;

/// Consistent P1 mass matrix, entries \int phi_i phi_j dx.
inline Tridiagonal assemble_mass(const Mesh1D& mesh) {
  const std::size_t n = mesh.num_nodes();
  const double h = mesh.h();
  std::vector<double> diag(n, 2.0 * h / 3.0);
  diag.front() = h / 3.0;
  diag.back() = h / 3.0;
  return Tridiagonal(std::move(diag), std::vector<double>(n - 1, h / 6.0));
}

/// P1 stiffness matrix, entries \int phi_i' phi_j' dx.
inline Tridiagonal assemble_stiffness(const Mesh1D& mesh) {
  const std::size_t n = mesh.num_nodes();
  const double inv_h = 1.0 / mesh.h();
  std::vector<double> diag(n, 2.0 * inv_h);
  diag.front() = inv_h;
  diag.back() = inv_h;
  return Tridiagonal(std::move(diag), std::vector<double>(n - 1, -inv_h));
}

enum class BcKind { Neumann, MeanConserving };

inline std::string_view to_string(BcKind kind) noexcept {
  return kind == BcKind::Neumann ? "neumann" : "mean-conserving";
}

inline std::optional<BcKind> parse_bc_kind(std::string_view name) noexcept {
  if (name == "neumann") return BcKind::Neumann;
  if (name == "mean-conserving") return BcKind::MeanConserving;
  return std::nullopt;
}

/// Rank-one term subtracted from the stiffness matrix: scale * w w^T.
struct RankOneCorrection {
  std::vector<double> w;
  double scale = 0.0;
};

/// Spatial operator K_eff = K - scale * w w^T.
///
/// With the nonlocal boundary condition the weak-form boundary term
/// (v(b) - v(a)) u_x(b) has u_x(b) replaced by (u(b) - u(a)) / (b - a), which
/// is the rank-one term with w = e_last - e_first and scale = 1/(b - a). It
/// annihilates both the constant and the linear nodal vector, so discrete
/// mass and first moment are invariant under the flow. Neumann leaves the
/// boundary term out entirely.
struct BcOperator {
  Tridiagonal stiffness;
  std::optional<RankOneCorrection> correction;

  std::size_t size() const noexcept { return stiffness.size(); }
  BcKind kind() const noexcept { return correction ? BcKind::MeanConserving : BcKind::Neumann; }
};

inline BcOperator build_bc_operator(Tridiagonal stiffness, const Mesh1D& mesh, BcKind kind) {
  if (stiffness.size() != mesh.num_nodes()) {
    throw DimensionError("stiffness has " + std::to_string(stiffness.size()) + " rows but mesh has " +
                         std::to_string(mesh.num_nodes()) + " nodes");
  }
  BcOperator op{std::move(stiffness), std::nullopt};
  if (kind == BcKind::MeanConserving) {
    RankOneCorrection c;
    c.w.assign(mesh.num_nodes(), 0.0);
    c.w.front() -= 1.0;
    c.w.back() += 1.0;
    c.scale = 1.0 / mesh.length();
    op.correction = std::move(c);
  }
  return op;
}

inline std::vector<double> apply_operator(const BcOperator& op, std::span<const double> u) {
  if (u.size() != op.size()) {
    throw DimensionError("operator has dimension " + std::to_string(op.size()) + ", vector has " +
                         std::to_string(u.size()));
  }
  std::vector<double> out = op.stiffness * u;
  if (op.correction) {
    const auto& c = *op.correction;
    const double coef = c.scale * dot<double>(c.w, u);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * c.w[i];
  }
  return out;
}

} // namespace diffkde
