#pragma once

#include <optional>
#include <string>

#include "nagumo/config.hpp"
#include "nagumo/io.hpp"

namespace nagumo {

struct SimulationOutput {
  Trajectory trajectory;
  std::optional<OdeReport> ode;
  HeatMap heatmap;
};

// Full pipeline behind `simulate`: run the configured solver, attach the
// comparison-ODE report when the model has the single-forcing shape, and
// (when out_dir is nonempty) write heatmap.csv, heatmap.png and summary.json.
SimulationOutput run_simulation(const RunConfig& cfg, const std::string& out_dir_override = "");

// Canonical configuration texts for the two reference experiments: the pure
// diffusion run and the finite-time blow-up run.
std::string fig1_config(const std::string& side);  // "left" | "right"

SimulationOutput reproduce_fig1(const std::string& side, const std::string& out_dir_override = "");

}  // namespace nagumo
