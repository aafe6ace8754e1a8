#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "diffkde/diagnostics.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"
#include "diffkde/sample.hpp"

namespace diffkde {

/// Shortest text that is guaranteed to round-trip: 17 significant digits.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_density_csv(std::ostream& out, const Mesh1D& mesh, std::span<const double> u) {
  if (u.size() != mesh.num_nodes()) throw DimensionError("density has wrong length for mesh");
  out << "x,u\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << format_real(mesh.nodes()[i]) << ',' << format_real(u[i]) << '\n';
  }
}

inline void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "t,mass,mean,min,delta_mass,delta_mean\n";
  for (const auto& r : records) {
    out << format_real(r.time) << ',' << format_real(r.mass) << ',' << format_real(r.mean) << ','
        << format_real(r.min_value) << ',' << format_real(r.delta_mass) << ',' << format_real(r.delta_mean)
        << '\n';
  }
}

inline void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
  out << "bin_left,count\n";
  for (const auto& bin : bins) out << format_real(bin.left) << ',' << bin.count << '\n';
}

/// Opens path for writing, hands the stream to fn and checks the result.
template <typename Fn>
void write_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  fn(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace diffkde
