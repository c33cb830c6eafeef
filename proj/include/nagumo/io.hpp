#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nagumo/solver.hpp"

namespace nagumo {

// Radial profiles u(p^{-ord}, t): rows indexed by ord ascending (the sphere
// S_j maps to row ord = -j; the largest ord row is the inner ball).
struct HeatMap {
  std::vector<int> ord_axis;
  std::vector<double> time_axis;
  std::vector<std::vector<double>> values;  // row-major: values[row][col]
};

// Build from saved frames; when the first frame is t = 0 and there are more
// frames after it, the t = 0 column is omitted (the map shows the evolution).
HeatMap build_heatmap(const Trajectory& traj, int j_min, int j_max);

// Header "ord,t=<v1>,..."; values in scientific notation with 17 significant
// digits so a re-parse restores every double bit-exactly.
void export_csv(const HeatMap& map, const std::string& path);

std::vector<std::vector<double>> parse_csv_matrix(const std::string& path);

// 8-bit grayscale PNG; rows ord ascending top to bottom, columns time
// ascending left to right, linear intensity from 0 to min(max, cap),
// nearest-neighbor upscaling.
void export_png(const HeatMap& map, const std::string& path, double cap, int upscale = 8);

struct OdeReport {
  double g0_signed = 0.0;               // pairing of u0 with the signed weight
  double g0_positive = 0.0;             // average of u0 under |W|^2 dx
  double blowup_time_signed = 0.0;      // +inf encodes "no blow-up"
  double blowup_time_positive = 0.0;
  int weight_r = 0;
  // Diagnostic comparison of dG/dt against H(G) along the run: frames checked
  // and frames where the inequality dG/dt >= H(G) fails beyond the
  // discretization allowance. Monitored, never asserted.
  int monitor_frames = 0;
  int monitor_violations = 0;
};

void export_json(const Trajectory& traj, const std::string& params_echo,
                 const std::optional<OdeReport>& ode, const std::string& path);

}  // namespace nagumo
