// Command-line front end for the LQ dynamic-game solver.
//
// Exit codes: 0 success, 2 usage error, 3 spec parse error, 4 numerical
// failure. Each failure prints one machine-parsable line on stderr.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lqgame/benchmark.hpp"
#include "lqgame/bounds.hpp"
#include "lqgame/spec_io.hpp"

namespace fs = std::filesystem;
using namespace lqgame;

namespace {

struct Options {
  std::string spec_path;
  int horizon = 0;
  std::vector<int> horizons;
  std::vector<double> x1;
  double tol = kStationaryTol;
  std::string out_dir = ".";
  std::string format = "csv";
  int t_min = 2;
  int t_max = 50;
  int length = 0;
  double perturb = 0.0;  // test hook: offset added to A(0,0) of the fixture
};

std::ofstream open_out(const Options& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  const fs::path path = fs::path(opt.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

GameSpec load_spec(const Options& opt) {
  GameSpec spec = parse_game_spec_file(opt.spec_path);
  const ValidationReport rep = validate(spec);
  if (!rep.ok) {
    std::ostringstream msg;
    msg << "invalid spec:";
    for (const auto& v : rep.violations) {
      msg << ' ' << v.field << " (" << v.message << ')';
    }
    throw ParseError(opt.spec_path, msg.str());
  }
  return spec;
}

Vector x1_from(const Options& opt, const GameSpec& spec) {
  if ((int)opt.x1.size() != spec.n) {
    throw CLI::ValidationError("--x1 needs exactly n entries");
  }
  return Eigen::Map<const Vector>(opt.x1.data(), (long)opt.x1.size());
}

std::vector<int> horizons_from(const Options& opt, const GameSpec& spec) {
  if (!opt.horizons.empty()) {
    if ((int)opt.horizons.size() != spec.N) {
      throw CLI::ValidationError("--horizons needs one entry per player");
    }
    return opt.horizons;
  }
  if (opt.horizon < 1) {
    throw CLI::ValidationError("need --horizon or --horizons");
  }
  return std::vector<int>(spec.N, opt.horizon);
}

bool wants_svg(const Options& opt) {
  return opt.format.find("svg") != std::string::npos;
}

int cmd_solve(const Options& opt) {
  const GameSpec spec = load_spec(opt);
  if (opt.horizon < 1) throw CLI::ValidationError("--horizon must be >= 1");
  const FiniteHorizonSolution sol = backward_solve(spec, opt.horizon);
  auto out = open_out(opt, "solution.csv");
  write_solution_csv(out, spec, sol);
  return 0;
}

int cmd_limit(const Options& opt) {
  const GameSpec spec = load_spec(opt);
  const StationarySolution sol = iterate_to_limit(spec, opt.tol);
  auto out = open_out(opt, "stationary.csv");
  write_stationary_csv(out, spec, sol);
  return 0;
}

int cmd_simulate(const Options& opt) {
  const GameSpec spec = load_spec(opt);
  const Vector x1 = x1_from(opt, spec);
  AffineStrategyProfile profile;
  if (!opt.horizons.empty() || opt.horizon >= 1) {
    profile = make_receding_strategy(spec, horizons_from(opt, spec));
  } else {
    profile = stationary_profile(iterate_to_limit(spec, opt.tol));
  }
  const RolloutStop stop = opt.length > 0
                               ? RolloutStop::fixed_length(opt.length)
                               : RolloutStop::tail_tol_stop(kDefaultTailTol);
  const Trajectory traj = rollout(spec, profile, x1, stop);
  auto out = open_out(opt, "trajectory.csv");
  write_trajectory_csv(out, spec, traj);
  std::cout << "stages=" << traj.length;
  for (int i = 0; i < spec.N; ++i) {
    std::cout << " J" << i + 1 << '=' << format_number(traj.total[i])
              << " tail" << i + 1 << '=' << format_number(traj.tail_bound[i]);
  }
  std::cout << '\n';
  return 0;
}

int cmd_bound(const Options& opt) {
  const GameSpec spec = load_spec(opt);
  const Vector x1 = x1_from(opt, spec);
  const std::vector<int> horizons = horizons_from(opt, spec);
  const StationarySolution sol = iterate_to_limit(spec, opt.tol);
  const BoundReport rep = gap_bound(spec, sol, horizons, x1);
  auto out = open_out(opt, "bound.csv");
  write_bound_csv(out, spec, rep);
  if (!rep.applicable) {
    throw InapplicableError(rep.lambda + rep.b * rep.epsilon);
  }
  return 0;
}

std::vector<SweepRow> to_sweep_rows(const std::vector<HorizonSweepPoint>& pts) {
  std::vector<SweepRow> rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) rows.push_back({p.T, p.K1, p.L1, p.costs, p.bound});
  return rows;
}

void write_sweep_plots(const Options& opt, const GameSpec& spec,
                       const std::vector<HorizonSweepPoint>& pts,
                       const StationarySolution& sol) {
  std::vector<double> ts;
  for (const auto& p : pts) ts.push_back(p.T);
  std::vector<PlotSeries> gains, costs;
  for (int i = 0; i < spec.N; ++i) {
    for (int c = 0; c < spec.n; ++c) {
      PlotSeries s{"K1(T) p" + std::to_string(i + 1) + "[" +
                       std::to_string(c + 1) + "]",
                   {}, false};
      PlotSeries lim{"K* p" + std::to_string(i + 1) + "[" +
                         std::to_string(c + 1) + "]",
                     {}, true};
      for (const auto& p : pts) {
        s.y.push_back(p.K1[i](0, c));
        lim.y.push_back(sol.K[i](0, c));
      }
      gains.push_back(std::move(s));
      gains.push_back(std::move(lim));
    }
    PlotSeries jc{"Jtilde p" + std::to_string(i + 1), {}, false};
    PlotSeries jl{"Jstar p" + std::to_string(i + 1), {}, true};
    for (const auto& p : pts) {
      jc.y.push_back(p.costs[i].approx);
      jl.y.push_back(p.costs[i].limit);
    }
    costs.push_back(std::move(jc));
    costs.push_back(std::move(jl));
  }
  {
    auto out = open_out(opt, "gains_vs_horizon.svg");
    write_svg_plot(out, "first-stage gains vs horizon", ts, gains);
  }
  {
    auto out = open_out(opt, "cost_vs_horizon.svg");
    write_svg_plot(out, "receding-horizon cost vs horizon", ts, costs);
  }
}

int cmd_sweep(const Options& opt) {
  const GameSpec spec = load_spec(opt);
  const Vector x1 = x1_from(opt, spec);
  if (opt.t_min < 1 || opt.t_max < opt.t_min) {
    throw CLI::ValidationError("bad --t-min/--t-max range");
  }
  const auto pts = sweep_horizons(spec, opt.t_min, opt.t_max, x1);
  auto out = open_out(opt, "sweep.csv");
  write_sweep_csv(out, spec, to_sweep_rows(pts));
  if (wants_svg(opt)) {
    write_sweep_plots(opt, spec, pts, iterate_to_limit(spec, opt.tol));
  }
  return 0;
}

int cmd_reproduce(const Options& opt) {
  GameSpec spec = benchmark_two_player();
  spec.A(0, 0) += opt.perturb;
  const Vector x1 = benchmark_x1();
  const BenchmarkReference ref = benchmark_reference();

  const StationarySolution sol = iterate_to_limit(spec);
  {
    auto out = open_out(opt, "stationary.csv");
    write_stationary_csv(out, spec, sol);
  }

  // First-stage matrices for T = 1..20 and the cost sweep for T = 2..50.
  const auto gain_pts = sweep_horizons(spec, 1, 20, x1);
  {
    auto out = open_out(opt, "gains_by_horizon.csv");
    write_sweep_csv(out, spec, to_sweep_rows(gain_pts));
  }
  const auto cost_pts = sweep_horizons(spec, 2, 50, x1);
  {
    auto out = open_out(opt, "costs_by_horizon.csv");
    write_sweep_csv(out, spec, to_sweep_rows(cost_pts));
  }
  if (wants_svg(opt)) write_sweep_plots(opt, spec, cost_pts, sol);

  const Trajectory traj =
      rollout(spec, stationary_profile(sol), x1,
              RolloutStop::tail_tol_stop(kDefaultTailTol));

  auto summary = open_out(opt, "summary.txt");
  int failures = 0;
  auto check = [&](const std::string& name, double got, double want,
                   double tol) {
    const bool ok = std::abs(got - want) <= tol;
    failures += ok ? 0 : 1;
    const std::string line = std::string(ok ? "PASS" : "FAIL") + " " + name +
                             " got=" + format_number(got) +
                             " want=" + format_number(want) +
                             " tol=" + format_number(tol);
    summary << line << '\n';
    std::cout << line << '\n';
  };
  for (int c = 0; c < 3; ++c) {
    check("K1[" + std::to_string(c + 1) + "]", sol.K[0](0, c), ref.K1(0, c),
          5e-4);
  }
  check("L1", sol.L[0](0), ref.L1, 5e-4);
  for (int c = 0; c < 3; ++c) {
    check("K2[" + std::to_string(c + 1) + "]", sol.K[1](0, c), ref.K2(0, c),
          5e-4);
  }
  check("L2", sol.L[1](0), ref.L2, 5e-4);
  check("J1", traj.total[0], ref.J1, 5e-2);
  check("J2", traj.total[1], ref.J2, 5e-2);
  if (failures > 0) {
    std::cerr << "error: " << failures << " benchmark checks failed\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-player discrete-time LQ dynamic game solver"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec) {
      sub->add_option("--spec", opt.spec_path, "game-spec file")->required();
    }
    sub->add_option("--tol", opt.tol, "limit-iteration tolerance");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--format", opt.format, "csv or csv,svg");
  };

  auto* solve = app.add_subcommand("solve", "solve the T-stage game");
  add_common(solve, true);
  solve->add_option("--horizon", opt.horizon, "game length T")->required();

  auto* limit = app.add_subcommand("limit", "iterate to the limiting equilibrium");
  add_common(limit, true);

  auto* simulate = app.add_subcommand("simulate", "roll out a closed loop");
  add_common(simulate, true);
  simulate->add_option("--x1", opt.x1, "initial state")->required();
  simulate->add_option("--horizon", opt.horizon, "common prediction horizon");
  simulate->add_option("--horizons", opt.horizons, "per-player horizons");
  simulate->add_option("--length", opt.length,
                       "fixed stage count (default: run to tail tolerance)");

  auto* bound = app.add_subcommand("bound", "certified cost-gap bound");
  add_common(bound, true);
  bound->add_option("--x1", opt.x1, "initial state")->required();
  bound->add_option("--horizon", opt.horizon, "common prediction horizon");
  bound->add_option("--horizons", opt.horizons, "per-player horizons");

  auto* sweep = app.add_subcommand("sweep", "sweep prediction horizons");
  add_common(sweep, true);
  sweep->add_option("--x1", opt.x1, "initial state")->required();
  sweep->add_option("--t-min", opt.t_min, "first horizon (default 2)");
  sweep->add_option("--t-max", opt.t_max, "last horizon (default 50)");

  auto* repro = app.add_subcommand(
      "reproduce-paper", "run the built-in benchmark and check its values");
  add_common(repro, false);
  repro->add_option("--perturb", opt.perturb,
                    "test hook: offset added to the benchmark A(1,1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (limit->parsed()) return cmd_limit(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (bound->parsed()) return cmd_bound(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (repro->parsed()) return cmd_reproduce(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse: " << e.what() << '\n';
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "numerical: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
