#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diffkde/assembly.hpp"
#include "diffkde/csv.hpp"
#include "diffkde/diagnostics.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"
#include "diffkde/sample.hpp"
#include "diffkde/solver.hpp"
#include "diffkde/version.hpp"

namespace diffkde::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsage = 2, kIoFailure = 3 };

class UsageError : public Error {
public:
  using Error::Error;
};

/// Fully resolved command line: solver settings plus where data comes from
/// and goes to.
struct RunPlan {
  SolverConfig solver;
  double a = 0.0;
  double b = 10.0;
  std::size_t elements = 5000;
  std::optional<std::string> input;
  std::optional<std::size_t> generate;
  std::optional<std::uint64_t> seed;
  std::size_t histogram_bins = 50;
  std::optional<std::string> density_out;
  std::optional<std::string> diagnostics_out;
  std::optional<std::string> histogram_out;
  std::optional<std::string> manifest_out;
};

inline void configure(CLI::App& app, RunPlan& plan, std::vector<double>& domain, std::string& bc) {
  app.set_version_flag("--version", std::string(kVersion));
  auto* input = app.add_option("--input", plan.input, "Sample file, one number per line");
  auto* generate = app.add_option("--generate", plan.generate, "Draw N uniform points instead of reading a file");
  auto* seed = app.add_option("--seed", plan.seed, "Seed for --generate");
  input->excludes(generate);
  generate->excludes(input);
  generate->needs(seed);
  seed->needs(generate);
  app.add_option("--domain", domain, "Interval endpoints A B")->expected(2)->capture_default_str();
  app.add_option("--elements", plan.elements, "Number of finite elements")->capture_default_str();
  app.add_option("--dt", plan.solver.dt, "Time step")->capture_default_str();
  app.add_option("--t-final", plan.solver.t_final, "Diffusion time (bandwidth)")->capture_default_str();
  app.add_option("--bc", bc, "Boundary condition: neumann | mean-conserving")->required();
  app.add_option("--density-out", plan.density_out, "CSV of the final density (x,u)");
  app.add_option("--diagnostics-out", plan.diagnostics_out, "CSV of per-step mass and mean");
  app.add_option("--histogram-bins", plan.histogram_bins, "Histogram bin count")->capture_default_str();
  app.add_option("--histogram-out", plan.histogram_out, "CSV of the sample histogram");
  app.add_option("--snapshot-stride", plan.solver.snapshot_stride,
                 "Also write every K-th state next to --density-out");
  app.add_option("--manifest-out", plan.manifest_out, "key=value record of the resolved run");
}

/// Parses arguments (without the program name). Returns nullopt when help
/// or version output was requested and printed.
inline std::optional<RunPlan> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Diffusion density estimation with Neumann or mean-conserving boundaries", "diffkde"};
  RunPlan plan;
  std::vector<double> domain{plan.a, plan.b};
  std::string bc;
  configure(app, plan, domain, bc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!plan.input && !plan.generate) throw UsageError("one of --input or --generate is required");
  if (plan.generate && *plan.generate == 0) throw UsageError("--generate must be at least 1");
  const auto kind = parse_bc_kind(bc);
  if (!kind) throw UsageError("--bc: unknown boundary condition '" + bc + "' (valid: neumann, mean-conserving)");
  plan.solver.bc = *kind;
  plan.a = domain[0];
  plan.b = domain[1];
  if (!(std::isfinite(plan.a) && std::isfinite(plan.b)) || !(plan.b > plan.a)) {
    throw UsageError("--domain: need A < B");
  }
  if (plan.elements == 0) throw UsageError("--elements must be at least 1");
  if (!(plan.solver.dt > 0.0) || !std::isfinite(plan.solver.dt)) throw UsageError("--dt must be > 0");
  if (!(plan.solver.t_final > 0.0) || !std::isfinite(plan.solver.t_final)) {
    throw UsageError("--t-final must be > 0");
  }
  if (plan.solver.dt > plan.solver.t_final) throw UsageError("--dt must not exceed --t-final");
  if (plan.histogram_bins == 0) throw UsageError("--histogram-bins must be at least 1");
  if (plan.solver.snapshot_stride && *plan.solver.snapshot_stride == 0) {
    throw UsageError("--snapshot-stride must be at least 1");
  }
  if (plan.solver.snapshot_stride && !plan.density_out) {
    throw UsageError("--snapshot-stride requires --density-out");
  }
  return plan;
}

/// Path for the state after step k: "<stem>.step<k><ext>" beside base.
inline std::string snapshot_path(const std::string& base, std::size_t step) {
  const std::filesystem::path p(base);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + ".step" + std::to_string(step));
  out += p.extension();
  return out.string();
}

inline void write_manifest(std::ostream& out, const RunPlan& plan, std::size_t steps, double seconds) {
  auto opt = [](const std::optional<std::string>& s) { return s ? *s : std::string(); };
  out << "version=" << kVersion << '\n';
  if (plan.input) {
    out << "source=input\n" << "input=" << *plan.input << '\n';
  } else {
    out << "source=generate\n" << "generate=" << *plan.generate << '\n' << "seed=" << *plan.seed << '\n';
  }
  out << "domain_a=" << format_real(plan.a) << '\n'
      << "domain_b=" << format_real(plan.b) << '\n'
      << "elements=" << plan.elements << '\n'
      << "dt=" << format_real(plan.solver.dt) << '\n'
      << "t_final=" << format_real(plan.solver.t_final) << '\n'
      << "bc=" << to_string(plan.solver.bc) << '\n'
      << "snapshot_stride="
      << (plan.solver.snapshot_stride ? std::to_string(*plan.solver.snapshot_stride) : std::string("final"))
      << '\n'
      << "histogram_bins=" << plan.histogram_bins << '\n'
      << "density_out=" << opt(plan.density_out) << '\n'
      << "diagnostics_out=" << opt(plan.diagnostics_out) << '\n'
      << "histogram_out=" << opt(plan.histogram_out) << '\n'
      << "manifest_out=" << opt(plan.manifest_out) << '\n'
      << "steps=" << steps << '\n'
      << "wall_clock_seconds=" << seconds << '\n';
}

inline int run_pipeline(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();

  DataSample sample;
  try {
    sample = plan.input ? load_sample(*plan.input, plan.a, plan.b)
                        : generate_uniform(*plan.generate, plan.a, plan.b, *plan.seed);
  } catch (const Error& e) {
    err << "error: reading sample: " << e.what() << '\n';
    return kIoFailure;
  }

  Trajectory traj;
  Mesh1D mesh = build_mesh(plan.a, plan.b, plan.elements);
  try {
    const Tridiagonal mass = assemble_mass(mesh);
    const CoefficientVector u0 = project_deltas(sample, mesh, mass);
    traj = run(mesh, u0, plan.solver);
  } catch (const NumericalError& e) {
    err << "error: numerical failure at " << e.what() << '\n';
    return kNumericalFailure;
  }

  const DiagnosticsRecord& last = traj.final_diagnostics();
  if (last.min_value < 0.0) {
    err << "warning: density has negative coefficients at t=" << format_real(last.time)
        << " (min " << format_real(last.min_value) << ")\n";
  }

  try {
    if (plan.density_out) {
      write_file(*plan.density_out, [&](std::ostream& os) { write_density_csv(os, mesh, traj.final_state()); });
      if (plan.solver.snapshot_stride) {
        for (std::size_t i = 0; i + 1 < traj.snapshots.size(); ++i) {
          write_file(snapshot_path(*plan.density_out, traj.snapshot_steps[i]),
                     [&](std::ostream& os) { write_density_csv(os, mesh, traj.snapshots[i]); });
        }
      }
    }
    if (plan.diagnostics_out) {
      write_file(*plan.diagnostics_out, [&](std::ostream& os) { write_diagnostics_csv(os, traj.diagnostics); });
    }
    if (plan.histogram_out) {
      const auto bins = histogram(sample, plan.histogram_bins);
      write_file(*plan.histogram_out, [&](std::ostream& os) { write_histogram_csv(os, bins); });
    }
    if (plan.manifest_out) {
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      write_file(*plan.manifest_out,
                 [&](std::ostream& os) { write_manifest(os, plan, traj.times.size() - 1, seconds); });
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }

  out << "bc=" << to_string(plan.solver.bc) << " points=" << sample.size() << " elements=" << plan.elements
      << " steps=" << traj.times.size() - 1 << '\n'
      << "t=" << format_real(last.time) << " mass=" << format_real(last.mass) << " mean=" << format_real(last.mean)
      << " min=" << format_real(last.min_value) << '\n'
      << "delta_mass=" << format_real(last.delta_mass) << " delta_mean=" << format_real(last.delta_mean)
      << " relative_mean_change=" << format_real(last.relative_mean_change()) << '\n';
  return kSuccess;
}

inline int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  std::optional<RunPlan> plan;
  try {
    plan = parse_args(args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }
  if (!plan) return kSuccess;
  return run_pipeline(*plan, out, err);
}

} // namespace diffkde::cli
