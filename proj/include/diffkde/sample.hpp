#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "diffkde/assembly.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"

namespace diffkde {

/// Raw data points together with the interval they live on.
struct DataSample {
  std::vector<double> points;
  double a = 0.0;
  double b = 1.0;

  std::size_t size() const noexcept { return points.size(); }

  double mean() const noexcept {
    double s = 0.0;
    for (double p : points) s += p;
    return s / static_cast<double>(points.size());
  }
};

/// Nodal coefficients of a P1 function, one per mesh node.
using CoefficientVector = std::vector<double>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

inline void check_domain(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
    throw DomainError("sample domain requires a < b, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  }
}

} // namespace detail

/// Parses one decimal number per line. Blank lines and lines starting with
/// '#' are skipped.
inline DataSample read_sample(std::istream& in, double a, double b) {
  detail::check_domain(a, b);
  DataSample sample{{}, a, b};
  std::ostringstream bad;
  std::size_t n_bad = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;

    std::string_view num = text;
    if (num.front() == '+') num.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || end != num.data() + num.size() || !std::isfinite(value)) {
      throw ParseError("not a decimal number: '" + std::string(text) + "'", lineno);
    }
    if (value < a || value > b) {
      if (n_bad++ > 0) bad << ", ";
      bad << text << " (line " << lineno << ")";
      continue;
    }
    sample.points.push_back(value);
  }
  if (n_bad > 0) {
    std::ostringstream msg;
    msg << n_bad << " value(s) outside [" << a << ", " << b << "]: " << bad.str();
    throw DomainError(msg.str());
  }
  if (sample.points.empty()) {
    throw SizeError("sample contains no data points");
  }
  return sample;
}

inline DataSample load_sample(const std::string& path, double a, double b) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open sample file '" + path + "'");
  }
  return read_sample(in, a, b);
}

/// n draws from Uniform[a, b]. The mapping from generator output to [a, b]
/// is spelled out so that the same seed gives the same sample on every
/// standard library.
inline DataSample generate_uniform(std::size_t n, double a, double b, std::uint64_t seed) {
  detail::check_domain(a, b);
  if (n == 0) throw SizeError("cannot generate an empty sample");
  std::mt19937_64 rng(seed);
  DataSample sample{{}, a, b};
  sample.points.reserve(n);
  constexpr double unit = 1.0 / 9007199254740992.0;  // 2^-53
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * unit;  // [0, 1)
    sample.points.push_back(a + (b - a) * u);
  }
  return sample;
}

/// Puts each point's delta mass on its nearest node. A point at node i gets
/// coefficient 1/(N \int phi_i), i.e. 1/(N h) in the interior and 2/(N h) on
/// the two boundary nodes whose hats are half as wide, so that every point
/// carries mass exactly 1/N. A final scalar rescale removes the roundoff in
/// 1^T Mass u = 1.
inline CoefficientVector project_deltas(const DataSample& sample, const Mesh1D& mesh,
                                        const Tridiagonal& mass) {
  if (sample.a != mesh.a() || sample.b != mesh.b()) {
    throw DomainError("sample domain [" + std::to_string(sample.a) + ", " + std::to_string(sample.b) +
                      "] differs from mesh domain [" + std::to_string(mesh.a()) + ", " +
                      std::to_string(mesh.b()) + "]");
  }
  if (mass.size() != mesh.num_nodes()) {
    throw DimensionError("mass matrix does not match mesh");
  }
  if (sample.points.empty()) throw SizeError("sample contains no data points");

  // Integer multiplicities keep the result independent of point order.
  std::vector<std::size_t> counts(mesh.num_nodes(), 0);
  for (double p : sample.points) ++counts[nearest_node(mesh, p)];

  const std::vector<double> ones(mesh.num_nodes(), 1.0);
  const std::vector<double> hat_integrals = mass * std::span<const double>(ones);
  const double n = static_cast<double>(sample.size());
  CoefficientVector u(mesh.num_nodes());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = static_cast<double>(counts[i]) / (n * hat_integrals[i]);
  }

  const std::vector<double> mu = mass * std::span<const double>(u);
  double total = 0.0;
  for (double v : mu) total += v;
  for (double& v : u) v /= total;
  return u;
}

struct HistogramBin {
  double left;
  std::size_t count;
};

/// Equal-width bins over [a, b]; the right endpoint belongs to the last bin.
inline std::vector<HistogramBin> histogram(const DataSample& sample, std::size_t bins) {
  if (bins == 0) throw SizeError("histogram needs at least one bin");
  const double width = (sample.b - sample.a) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out[k] = {sample.a + static_cast<double>(k) * width, 0};
  }
  for (double p : sample.points) {
    const double pos = std::floor((p - sample.a) / (sample.b - sample.a) * static_cast<double>(bins));
    std::size_t k = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
    if (k >= bins) k = bins - 1;
    ++out[k].count;
  }
  return out;
}

} // namespace diffkde
