#include "fpsir/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <vector>

#include <CLI11.hpp>

#include "fpsir/csv.hpp"
#include "fpsir/errors.hpp"
#include "fpsir/mc_oracle.hpp"
#include "fpsir/scenario.hpp"

namespace fpsir::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<double> kDefaultSnapshots{0.0, 1.25, 2.5, 3.75, 5.0, 10.0};

int slice_index(double t, const GridSpec& grid) {
  const double dt = grid.control_dt();
  const long k = std::lround(t / dt);
  if (k < 0 || k >= grid.nt || std::abs(k * dt - t) > 1e-9 * grid.horizon)
    throw InvalidArgument("time " + csv::number(t) + " is not a grid time");
  return static_cast<int>(k);
}

struct Solution {
  ControlTrajectory control;
  DensityField density;
  std::optional<SqhTrace> trace;
};

Solution solve(const ScenarioConfig& cfg, bool force_uncontrolled) {
  if (cfg.controlled && !force_uncontrolled) {
    auto r = run_sqh(cfg.problem());
    return {std::move(r.control), std::move(r.density), std::move(r.trace)};
  }
  ControlTrajectory u(cfg.grid.nt);
  auto f = solve_forward(cfg.initial_density(), u, cfg.model, cfg.grid);
  return {std::move(u), std::move(f), std::nullopt};
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  auto os = csv::open_output(path);
  writer(os);
  os.flush();
  if (!os) throw IoError("write failed: " + path.string());
}

void write_artifacts(const ScenarioConfig& cfg, const Solution& sol,
                     const fs::path& dir, const std::vector<double>& snapshots) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());

  const auto& g = cfg.grid;
  write_file(dir / "controls.csv",
             [&](std::ostream& os) { csv::write_controls(os, sol.control, g); });
  if (sol.trace)
    write_file(dir / "trace.csv",
               [&](std::ostream& os) { csv::write_trace(os, *sol.trace); });

  const double s0 = cfg.init.center.s, i0 = cfg.init.center.i;
  const auto states = rk4_sir3(s0, i0, 1.0 - s0 - i0, sol.control, cfg.model, g);
  write_file(dir / "dynamics.csv",
             [&](std::ostream& os) { csv::write_dynamics(os, states); });

  for (double t : snapshots) {
    const int k = slice_index(t, g);
    write_file(dir / csv::snapshot_filename(g.time(k)), [&](std::ostream& os) {
      csv::write_field(os, sol.density.at(k), g, "f");
    });
  }

  const auto parts = evaluate_J_parts(sol.density, sol.control, cfg.cost, g);
  write_file(dir / "summary.txt", [&](std::ostream& os) {
    os << "label=" << cfg.label << '\n';
    if (sol.trace) {
      os << "status=" << to_string(sol.trace->status) << '\n'
         << "accepted_iterations=" << sol.trace->accepted_count() << '\n'
         << "trials=" << sol.trace->entries.size() << '\n'
         << "J0=" << csv::number(sol.trace->J0) << '\n';
    }
    os << "J=" << csv::number(parts.total()) << '\n'
       << "control_cost=" << csv::number(parts.control) << '\n'
       << "running_cost=" << csv::number(parts.running) << '\n'
       << "terminal_cost=" << csv::number(parts.terminal) << '\n';
  });
}

int cmd_run(const std::string& target, const std::string& out_dir,
            const std::vector<double>& snapshots, bool baseline,
            std::ostream& out) {
  const auto cfg = resolve_scenario(target);
  for (double t : snapshots) slice_index(t, cfg.grid);
  const auto sol = solve(cfg, baseline);
  write_artifacts(cfg, sol, out_dir, snapshots);
  const auto parts = evaluate_J_parts(sol.density, sol.control, cfg.cost, cfg.grid);
  out << "J=" << csv::number(parts.total());
  if (sol.trace)
    out << " status=" << to_string(sol.trace->status)
        << " accepted=" << sol.trace->accepted_count();
  out << " out=" << out_dir << '\n';
  return kOk;
}

int cmd_validate_mc(const std::string& target, int paths, std::uint64_t seed,
                    double time, std::ostream& out) {
  const auto cfg = resolve_scenario(target);
  const int k = slice_index(time, cfg.grid);
  if (paths < 1) throw InvalidArgument("--paths must be >= 1");
  const auto sol = solve(cfg, false);

  EnsembleSpec spec;
  spec.n_paths = paths;
  spec.seed = seed;
  spec.dt_em = cfg.grid.control_dt() / 10.0;
  const double t = cfg.grid.time(k);
  const auto sampler = truncated_gaussian_sampler(
      cfg.init.center, cfg.init.variance[0], cfg.init.variance[1], cfg.grid.lo,
      cfg.grid.hi);
  const auto snaps = em_ensemble(sampler, sol.control, cfg.model, cfg.grid, spec,
                                 std::span<const double>(&t, 1));
  const auto hist = histogram_density(snaps[0].points, cfg.grid);
  const auto& f = sol.density.at(k);

  Field2D weighted(cfg.grid.nx);
  for (int i = 0; i < cfg.grid.nx; ++i)
    for (int j = 0; j < cfg.grid.nx; ++j) weighted(i, j) = f(i, j) * cfg.grid.coord(j);
  const auto em = mean_infected(snaps[0]);

  out << "l1_distance=" << csv::number(l1_distance(f, hist, cfg.grid)) << '\n'
      << "fp_mean_i=" << csv::number(quadrature(weighted, cfg.grid)) << '\n'
      << "em_mean_i=" << csv::number(em.mean) << '\n'
      << "em_std_error=" << csv::number(em.std_error) << '\n';
  return kOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Fokker-Planck optimal control of a stochastic SIR model", "fpsir"};
  app.require_subcommand(1);

  std::string target;
  std::string out_dir = "output";
  std::vector<double> snapshots = kDefaultSnapshots;

  auto* run = app.add_subcommand("run", "Solve a scenario and write CSV artifacts");
  run->add_option("scenario", target, "Preset name or config file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--snapshots", snapshots, "Density snapshot times")->delimiter(',');

  auto* base = app.add_subcommand("baseline", "Forward solve with zero control");
  base->add_option("scenario", target, "Preset name or config file")->required();
  base->add_option("--out", out_dir, "Output directory");
  base->add_option("--snapshots", snapshots, "Density snapshot times")->delimiter(',');

  int paths = 100000;
  std::uint64_t seed = EnsembleSpec{}.seed;
  double time = 5.0;
  auto* mc = app.add_subcommand(
      "validate-mc", "Compare the density with an Euler-Maruyama ensemble");
  mc->add_option("scenario", target, "Preset name or config file")->required();
  mc->add_option("--paths", paths, "Number of sample paths");
  mc->add_option("--seed", seed, "Ensemble seed");
  mc->add_option("--time", time, "Comparison time (a grid time)");

  auto* check = app.add_subcommand("check", "Run the invariant self-test battery");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*run) return cmd_run(target, out_dir, snapshots, false, out);
    if (*base) return cmd_run(target, out_dir, snapshots, true, out);
    if (*mc) return cmd_validate_mc(target, paths, seed, time, out);
    if (*check) return run_self_checks(out) == 0 ? kOk : kCheckFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace fpsir::cli
