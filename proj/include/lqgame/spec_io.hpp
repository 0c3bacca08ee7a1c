#ifndef LQGAME_SPEC_IO_HPP
#define LQGAME_SPEC_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lqgame/bounds.hpp"
#include "lqgame/game_spec.hpp"
#include "lqgame/riccati.hpp"
#include "lqgame/simulate.hpp"
#include "lqgame/stationary.hpp"

namespace lqgame {

/// Parses a game-spec document (JSON text with keys n, p, N, m, A, B, C, D,
/// Q, R, delta, ref). Declared-symmetric matrices are symmetrized on
/// ingestion when the asymmetry is round-off sized, rejected otherwise.
/// Throws ParseError naming the offending key.
GameSpec parse_game_spec(std::istream& in);
GameSpec parse_game_spec_file(const std::string& path);

/// Shortest decimal that round-trips the value, capped at 12 significant
/// digits. Deterministic and locale-independent.
std::string format_number(double v);

void write_solution_csv(std::ostream& out, const GameSpec& spec,
                        const FiniteHorizonSolution& sol);
void write_stationary_csv(std::ostream& out, const GameSpec& spec,
                          const StationarySolution& sol);
void write_trajectory_csv(std::ostream& out, const GameSpec& spec,
                          const Trajectory& traj);
void write_bound_csv(std::ostream& out, const GameSpec& spec,
                     const BoundReport& rep);

struct SweepRow {
  int T = 0;
  std::vector<Matrix> K1;  // per player, first-stage gain of the T-stage game
  std::vector<Vector> L1;
  std::vector<CostGap> costs;
  std::vector<double> bound;  // empty when not applicable
};

void write_sweep_csv(std::ostream& out, const GameSpec& spec,
                     const std::vector<SweepRow>& rows);

/// Minimal SVG line chart: one polyline per series, shared x values.
struct PlotSeries {
  std::string label;
  std::vector<double> y;
  bool dashed = false;
};
void write_svg_plot(std::ostream& out, const std::string& title,
                    const std::vector<double>& x,
                    const std::vector<PlotSeries>& series);

}  // namespace lqgame

#endif
