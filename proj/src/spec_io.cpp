#include "lqgame/spec_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "lqgame/errors.hpp"

namespace lqgame {

namespace {

using nlohmann::json;

Matrix parse_matrix(const json& j, int rows, int cols, const std::string& key) {
  if (!j.is_array() || (int)j.size() != rows) {
    throw ParseError(key, "expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || (int)row.size() != cols) {
      throw ParseError(key, "row " + std::to_string(r) + " needs " +
                                std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_number()) {
        throw ParseError(key, "non-numeric entry in row " + std::to_string(r));
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

Vector parse_vector(const json& j, int len, const std::string& key) {
  if (!j.is_array() || (int)j.size() != len) {
    throw ParseError(key, "expected " + std::to_string(len) + " entries");
  }
  Vector v(len);
  for (int k = 0; k < len; ++k) {
    if (!j[k].is_number()) throw ParseError(key, "non-numeric entry");
    v(k) = j[k].get<double>();
  }
  return v;
}

const json& field(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(key, "missing");
  return *it;
}

int positive_int(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<int>() <= 0) {
    throw ParseError(key, "expected a positive integer");
  }
  return j.get<int>();
}

Matrix ingest_symmetric(const Matrix& m, const std::string& key) {
  try {
    return symmetrize_checked(m, key);
  } catch (const std::invalid_argument& e) {
    throw ParseError(key, e.what());
  }
}

ReferenceSignal parse_ref(const json& j, int p, const std::string& key) {
  auto it = j.find("kind");
  if (it == j.end() || !it->is_string()) {
    throw ParseError(key + ".kind", "missing or not a string");
  }
  const std::string kind = it->get<std::string>();
  if (kind == "zero") return ReferenceSignal::zero();
  if (kind == "constant") {
    return ReferenceSignal::constant(
        parse_vector(field(j, "value"), p, key + ".value"));
  }
  if (kind == "sequence") {
    const json& vals = field(j, "values");
    if (!vals.is_array() || vals.empty()) {
      throw ParseError(key + ".values", "expected a nonempty array");
    }
    std::vector<Vector> vs;
    vs.reserve(vals.size());
    for (const auto& v : vals) vs.push_back(parse_vector(v, p, key + ".values"));
    return ReferenceSignal::sequence(std::move(vs));
  }
  throw ParseError(key + ".kind", "expected zero, constant, or sequence");
}

}  // namespace

GameSpec parse_game_spec(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }

  GameSpec s;
  s.n = positive_int(field(j, "n"), "n");
  s.p = positive_int(field(j, "p"), "p");
  s.N = positive_int(field(j, "N"), "N");

  const json& jm = field(j, "m");
  if (!jm.is_array() || (int)jm.size() != s.N) {
    throw ParseError("m", "expected one entry per player");
  }
  for (int i = 0; i < s.N; ++i) {
    s.m.push_back(positive_int(jm[i], "m[" + std::to_string(i) + "]"));
  }

  s.A = parse_matrix(field(j, "A"), s.n, s.n, "A");
  s.C = parse_matrix(field(j, "C"), s.p, s.n, "C");

  auto per_player = [&](const char* key) -> const json& {
    const json& arr = field(j, key);
    if (!arr.is_array() || (int)arr.size() != s.N) {
      throw ParseError(key, "expected one entry per player");
    }
    return arr;
  };

  const json& jB = per_player("B");
  const json& jD = per_player("D");
  const json& jQ = per_player("Q");
  const json& jdelta = per_player("delta");
  const json& jref = per_player("ref");
  const json& jR = per_player("R");
  for (int i = 0; i < s.N; ++i) {
    const std::string si = std::to_string(i);
    s.B.push_back(parse_matrix(jB[i], s.n, s.m[i], "B[" + si + "]"));
    s.D.push_back(parse_matrix(jD[i], s.p, s.m[i], "D[" + si + "]"));
    s.Q.push_back(ingest_symmetric(
        parse_matrix(jQ[i], s.p, s.p, "Q[" + si + "]"), "Q[" + si + "]"));
    if (!jdelta[i].is_number()) throw ParseError("delta[" + si + "]", "not a number");
    s.delta.push_back(jdelta[i].get<double>());
    s.ref.push_back(parse_ref(jref[i], s.p, "ref[" + si + "]"));
    if (!jR[i].is_array() || (int)jR[i].size() != s.N) {
      throw ParseError("R[" + si + "]", "expected one matrix per player");
    }
    std::vector<Matrix> row;
    for (int k = 0; k < s.N; ++k) {
      const std::string key = "R[" + si + "][" + std::to_string(k) + "]";
      row.push_back(
          ingest_symmetric(parse_matrix(jR[i][k], s.m[k], s.m[k], key), key));
    }
    s.R.push_back(std::move(row));
  }
  return s;
}

GameSpec parse_game_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  return parse_game_spec(in);
}

std::string format_number(double v) {
  char buf[40];
  for (int prec = 1; prec <= 12; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void write_stage_row(std::ostream& out, const GameSpec& spec,
                     const std::string& t_label, int i, const Matrix& K,
                     const Vector& L, const Matrix& P, int max_m) {
  out << t_label << ',' << i + 1;
  for (int k = 0; k < max_m * spec.n; ++k) {
    out << ',';
    const int r = k / spec.n, c = k % spec.n;
    if (r < spec.m[i]) out << format_number(K(r, c));
  }
  for (int k = 0; k < max_m; ++k) {
    out << ',';
    if (k < spec.m[i]) out << format_number(L(k));
  }
  for (int k = 0; k < spec.n; ++k) out << ',' << format_number(P(k, k));
  out << '\n';
}

void write_stage_header(std::ostream& out, const GameSpec& spec, int max_m) {
  out << "t,player";
  for (int k = 0; k < max_m * spec.n; ++k) {
    out << ",K_" << k / spec.n + 1 << '_' << k % spec.n + 1;
  }
  for (int k = 0; k < max_m; ++k) out << ",L_" << k + 1;
  for (int k = 0; k < spec.n; ++k) out << ",Pdiag_" << k + 1;
  out << '\n';
}

int max_input_dim(const GameSpec& spec) {
  int max_m = 0;
  for (int mi : spec.m) max_m = std::max(max_m, mi);
  return max_m;
}

}  // namespace

void write_solution_csv(std::ostream& out, const GameSpec& spec,
                        const FiniteHorizonSolution& sol) {
  const int max_m = max_input_dim(spec);
  write_stage_header(out, spec, max_m);
  for (int t = 1; t <= sol.T; ++t) {
    for (int i = 0; i < spec.N; ++i) {
      write_stage_row(out, spec, std::to_string(t), i, sol.gains[t - 1].K[i],
                      sol.gains[t - 1].L[i], sol.values[t - 1].P[i], max_m);
    }
  }
}

void write_stationary_csv(std::ostream& out, const GameSpec& spec,
                          const StationarySolution& sol) {
  out << "# iterations=" << sol.iterations
      << " lambda=" << format_number(sol.lambda)
      << " converged=" << (sol.converged ? 1 : 0) << '\n';
  out << "# residuals_K=";
  for (int i = 0; i < spec.N; ++i) {
    out << (i ? ";" : "") << format_number(sol.residuals.K[i]);
  }
  out << " residuals_P=";
  for (int i = 0; i < spec.N; ++i) {
    out << (i ? ";" : "") << format_number(sol.residuals.P[i]);
  }
  out << '\n';
  const int max_m = max_input_dim(spec);
  write_stage_header(out, spec, max_m);
  for (int i = 0; i < spec.N; ++i) {
    write_stage_row(out, spec, "inf", i, sol.K[i], sol.L[i], sol.P[i], max_m);
  }
}

void write_trajectory_csv(std::ostream& out, const GameSpec& spec,
                          const Trajectory& traj) {
  out << "t";
  for (int k = 0; k < spec.n; ++k) out << ",x_" << k + 1;
  for (int k = 0; k < spec.p; ++k) out << ",y_" << k + 1;
  for (int k = 0; k < spec.total_m(); ++k) out << ",u_" << k + 1;
  for (int i = 0; i < spec.N; ++i) out << ",cost_" << i + 1;
  out << '\n';
  for (int t = 0; t < traj.length; ++t) {
    out << t + 1;
    for (int k = 0; k < spec.n; ++k) out << ',' << format_number(traj.x[t](k));
    for (int k = 0; k < spec.p; ++k) out << ',' << format_number(traj.y[t](k));
    for (int k = 0; k < spec.total_m(); ++k) {
      out << ',' << format_number(traj.u[t](k));
    }
    for (int i = 0; i < spec.N; ++i) {
      out << ',' << format_number(traj.stage_cost[i][t]);
    }
    out << '\n';
  }
}

void write_bound_csv(std::ostream& out, const GameSpec& spec,
                     const BoundReport& rep) {
  out << "player,epsilon,b,d,lambda,M,g_eps,G1,G2,theta,bound,applicable,T_h\n";
  for (int i = 0; i < spec.N; ++i) {
    out << i + 1 << ',' << format_number(rep.epsilon) << ','
        << format_number(rep.b) << ',' << format_number(rep.d) << ','
        << format_number(rep.lambda) << ',' << format_number(rep.M) << ','
        << format_number(rep.g_eps) << ',' << format_number(rep.G1[i]) << ','
        << format_number(rep.G2[i]) << ',' << format_number(rep.theta[i])
        << ',' << format_number(rep.bound[i]) << ','
        << (rep.applicable ? "true" : "false") << ',' << rep.T_h << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const GameSpec& spec,
                     const std::vector<SweepRow>& rows) {
  out << "T";
  for (int i = 0; i < spec.N; ++i) {
    const int pi = i + 1;
    for (int k = 0; k < spec.m[i] * spec.n; ++k) {
      out << ",K1_p" << pi << '_' << k + 1;
    }
    for (int k = 0; k < spec.m[i]; ++k) out << ",L1_p" << pi << '_' << k + 1;
    out << ",Jtilde_p" << pi << ",Jstar_p" << pi << ",gap_p" << pi
        << ",bound_p" << pi;
  }
  out << '\n';
  for (const auto& row : rows) {
    out << row.T;
    for (int i = 0; i < spec.N; ++i) {
      for (int r = 0; r < spec.m[i]; ++r) {
        for (int c = 0; c < spec.n; ++c) {
          out << ',' << format_number(row.K1[i](r, c));
        }
      }
      for (int k = 0; k < spec.m[i]; ++k) {
        out << ',' << format_number(row.L1[i](k));
      }
      out << ',' << format_number(row.costs[i].approx) << ','
          << format_number(row.costs[i].limit) << ','
          << format_number(row.costs[i].gap) << ',';
      if (!row.bound.empty()) out << format_number(row.bound[i]);
    }
    out << '\n';
  }
}

void write_svg_plot(std::ostream& out, const std::string& title,
                    const std::vector<double>& x,
                    const std::vector<PlotSeries>& series) {
  const int W = 720, Hh = 440, ml = 60, mr = 160, mt = 40, mb = 40;
  double xmin = x.front(), xmax = x.back();
  double ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (double v : s.y) {
      if (first) {
        ymin = ymax = v;
        first = false;
      }
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double v) {
    return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double v) {
    return Hh - mb - (v - ymin) / (ymax - ymin) * (Hh - mt - mb);
  };
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
      << "' height='" << Hh << "'>\n";
  out << "<text x='" << W / 2 << "' y='20' text-anchor='middle'>" << title
      << "</text>\n";
  out << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr
      << "' height='" << Hh - mt - mb
      << "' fill='none' stroke='#999'/>\n";
  int ci = 0;
  for (const auto& s : series) {
    out << "<polyline fill='none' stroke='" << colors[ci % 8] << "'";
    if (s.dashed) out << " stroke-dasharray='6,4'";
    out << " points='";
    for (size_t k = 0; k < x.size() && k < s.y.size(); ++k) {
      out << px(x[k]) << ',' << py(s.y[k]) << ' ';
    }
    out << "'/>\n";
    out << "<text x='" << W - mr + 8 << "' y='" << mt + 16 + 16 * ci
        << "' fill='" << colors[ci % 8] << "'>" << s.label << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

}  // namespace lqgame
