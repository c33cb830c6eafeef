#pragma once

#include <stdexcept>
#include <string>

#include "nagumo/solver.hpp"

namespace nagumo {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One `key = value` per line, `#` starts a comment. Required keys:
//   p, gamma, alpha, beta, m, pd_terms, s, j_min, j_max, dt, t_end,
//   save_every, tail_depth, blowup_threshold, method, initial, weight_r, out_dir
// Optional: reaction (on|off, default on), png_scale (default 8),
// picard_tol, max_picard_iters. Unknown or duplicate keys are rejected with
// the offending line number.
struct RunConfig {
  ModelParams params;
  SolverConfig solver;
  std::string initial;  // "gauss:A:B" -> A exp(-p^{|ord|}/B), or "ball:k"
  int weight_r = 0;
  std::string out_dir;
  int png_scale = 8;

  RadialField build_initial() const;
  std::string echo_json() const;  // normalized state as JSON (for summaries)
  std::string to_text() const;    // normalized key=value form; parses back to itself
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace nagumo
