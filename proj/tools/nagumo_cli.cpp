#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "nagumo/checks.hpp"
#include "nagumo/experiments.hpp"

namespace {

// Worker-thread cap from the environment; the kernels run sequentially, so
// any positive cap is honored as-is.
int thread_cap() {
  const char* raw = std::getenv("NAGUMO_THREADS");
  if (raw == nullptr) return 1;
  const int v = std::atoi(raw);
  return v >= 1 ? v : 1;
}

void print_summary(const nagumo::SimulationOutput& out, const std::string& dir) {
  const nagumo::Trajectory& traj = out.trajectory;
  std::cout << "frames: " << traj.times.size() << "  t_final: " << (traj.times.empty() ? 0.0 : traj.times.back())
            << "  sup_final: " << (traj.sup_norm.empty() ? 0.0 : traj.sup_norm.back())
            << "  error_budget: " << traj.error_budget << "\n";
  if (traj.blowup) {
    std::cout << "blow-up bracket: [" << traj.blowup->t_lo << ", " << traj.blowup->t_hi << "]"
              << "  sup at bracket: " << traj.blowup->sup_lo << " -> " << traj.blowup->sup_hi << "\n";
  } else {
    std::cout << "no blow-up within the horizon\n";
  }
  if (out.ode) {
    std::cout << "comparison ODE: g0(signed) = " << out.ode->g0_signed << " -> t = " << out.ode->blowup_time_signed
              << ", g0(positive) = " << out.ode->g0_positive << " -> t = " << out.ode->blowup_time_positive << "\n";
  }
  if (!dir.empty()) std::cout << "wrote " << dir << "/{heatmap.csv, heatmap.png, summary.json}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for p-adic Nagumo-type evolution equations"};
  app.require_subcommand(1);
  (void)thread_cap();

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation described by a config file");
  simulate->add_option("config", config_path, "key = value configuration file")->required();

  std::string side;
  std::string out_dir;
  auto* fig1 = app.add_subcommand("reproduce-fig1", "Run the canonical diffusion (left) or blow-up (right) experiment");
  fig1->add_option("side", side, "left | right")->required();
  fig1->add_option("--out-dir", out_dir, "output directory override");

  std::string est_config;
  double margin = -1.0;
  auto* estimate = app.add_subcommand("estimate-existence", "Print the well-posedness horizon for a config");
  estimate->add_option("config", est_config, "key = value configuration file")->required();
  estimate->add_option("--margin", margin, "ball radius M around the free trajectory (default ||f0||_s)");

  std::uint64_t seed = nagumo::kDefaultCheckSeed;
  auto* invariants = app.add_subcommand("check-invariants", "Run the full property suite");
  invariants->add_option("--seed", seed, "seed for the randomized suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const nagumo::RunConfig cfg = nagumo::parse_config_file(config_path);
      const nagumo::SimulationOutput out = nagumo::run_simulation(cfg);
      print_summary(out, cfg.out_dir);
      return 0;
    }
    if (*fig1) {
      const nagumo::SimulationOutput out = nagumo::reproduce_fig1(side, out_dir);
      print_summary(out, out_dir.empty() ? ("fig1_" + side) : out_dir);
      return 0;
    }
    if (*estimate) {
      const nagumo::RunConfig cfg = nagumo::parse_config_file(est_config);
      const nagumo::RadialField f0 = cfg.build_initial();
      const double f0_norm = f0.norm_sobolev(cfg.params.s);
      const double M = margin > 0.0 ? margin : std::max(f0_norm, 1e-8);
      const nagumo::ExistenceEstimate est = nagumo::existence_time(f0_norm, M, cfg.params);
      std::cout << "||f0||_s = " << f0_norm << "\n"
                << "M = " << est.M << "\n"
                << "T = " << est.T << "\n"
                << "L(M+||f0||, 0) = " << est.L_at_boundary << "\n"
                << "contraction constant = " << est.contraction_constant << "\n"
                << "kernel: q = " << est.kernel_q << ", c = " << est.kernel_c << "\n";
      return 0;
    }
    if (*invariants) {
      const auto results = nagumo::run_all_checks(seed);
      bool ok = true;
      for (const auto& r : results) {
        ok = ok && r.passed();
        std::cout << (r.passed() ? "PASS" : "FAIL") << "  " << r.name << "  cases=" << r.cases
                  << " violations=" << r.violations;
        if (!r.passed()) std::cout << " worst=" << r.worst;
        std::cout << "  (" << r.elapsed_seconds << " s)" << (r.note.empty() ? "" : "  " + r.note) << "\n";
      }
      return ok ? 0 : 1;
    }
  } catch (const nagumo::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
