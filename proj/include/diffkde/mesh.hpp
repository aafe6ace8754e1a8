#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "diffkde/error.hpp"

namespace diffkde {

/// Uniform partition of [a, b] into M elements of width h, with M+1 nodes.
/// Immutable once built.
class Mesh1D {
public:
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  std::size_t num_elements() const noexcept { return num_elements_; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  double h() const noexcept { return h_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_.at(i); }

  friend Mesh1D build_mesh(double a, double b, std::size_t num_elements);

private:
  Mesh1D() = default;

  double a_ = 0.0;
  double b_ = 0.0;
  std::size_t num_elements_ = 0;
  double h_ = 0.0;
  std::vector<double> nodes_;
};

inline Mesh1D build_mesh(double a, double b, std::size_t num_elements) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
    throw DomainError("mesh domain requires a < b, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  }
  if (num_elements == 0) {
    throw SizeError("mesh requires at least one element");
  }
  Mesh1D mesh;
  mesh.a_ = a;
  mesh.b_ = b;
  mesh.num_elements_ = num_elements;
  mesh.h_ = (b - a) / static_cast<double>(num_elements);
  mesh.nodes_.resize(num_elements + 1);
  for (std::size_t i = 0; i < num_elements; ++i) {
    mesh.nodes_[i] = a + static_cast<double>(i) * mesh.h_;
  }
  mesh.nodes_[num_elements] = b;
  return mesh;
}

/// Index of the node closest to x. Ties go to the lower index.
inline std::size_t nearest_node(const Mesh1D& mesh, double x) {
  if (!(x >= mesh.a() && x <= mesh.b())) {
    throw DomainError("point " + std::to_string(x) + " lies outside [" +
                      std::to_string(mesh.a()) + ", " + std::to_string(mesh.b()) + "]");
  }
  const std::size_t last = mesh.num_elements();
  const double scaled = std::floor((x - mesh.a()) / mesh.h());
  std::size_t guess = scaled <= 0.0 ? 0 : static_cast<std::size_t>(scaled);
  if (guess > last) guess = last;

  // The floor can be off by one after roundoff; scan the neighbourhood in
  // increasing index order so that strict comparison keeps the lower index.
  const std::size_t lo = guess == 0 ? 0 : guess - 1;
  const std::size_t hi = guess + 1 > last ? last : guess + 1;
  std::size_t best = lo;
  double best_dist = std::abs(x - mesh.nodes()[lo]);
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    const double d = std::abs(x - mesh.nodes()[i]);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

} // namespace diffkde
