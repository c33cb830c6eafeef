#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nagumo/operators.hpp"
#include "nagumo/wavelets.hpp"

namespace nagumo {

// Coefficients of u_t = -gamma D^alpha u - u^3 + (beta+1) u^2 - beta u + P(D)(u^m).
// The working Sobolev index s must satisfy s - 2 delta > 1/2; the mild solver
// additionally needs delta < alpha. reaction_enabled = false drops the cubic
// reaction entirely (pure diffusion plus P(D) forcing).
struct ModelParams {
  Prime p;
  double gamma = 1.0;
  double alpha = 0.2;
  double beta = 0.0;
  int m = 3;
  PDTerms pd;
  double s = 2.0;
  bool reaction_enabled = true;

  double delta() const { return pd.degree(); }
  void validate() const;
};

enum class Method { EulerKochubei, EulerSpectral, Picard };

Method method_from_string(const std::string& name);
std::string method_to_string(Method m);

struct SolverConfig {
  int j_min = -20;
  int j_max = 20;
  double dt = 1e-3;
  double t_end = 1.0;
  int save_every = 1;
  TailPolicy tail;
  double blowup_threshold = 1e6;
  int max_picard_iters = 60;
  double picard_tol = 1e-10;
  Method method = Method::EulerKochubei;
};

struct BlowupBracket {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double sup_lo = 0.0;
  double sup_hi = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RadialField> snapshots;
  std::vector<double> sup_norm;
  std::vector<double> l2_norm;
  std::vector<double> hs_norm;
  std::vector<double> mass;
  std::vector<double> g_value;  // NaN entries when no weight was supplied
  std::optional<BlowupBracket> blowup;
  double error_budget = 0.0;
  std::vector<double> picard_residuals;
};

struct RhsResult {
  RadialField field;
  double error_bound = 0.0;
};

// Right-hand side of the evolution equation; the Taibleson route follows the
// requested method (the Picard solver uses the spectral route).
RhsResult rhs(const RadialField& u, const ModelParams& params, const TailPolicy& tail, Method route);

// Forward Euler march. Saves a frame at t = 0 and then every save_every
// steps. When the sup norm crosses cfg.blowup_threshold (or the state stops
// being finite) the run stops and the crossing is re-bracketed from the last
// saved frame with repeatedly halved steps until the bracket width is at
// most dt * 2^-10.
Trajectory euler_run(const RadialField& f0, const ModelParams& params, const SolverConfig& cfg,
                     const BlowupWeight* weight = nullptr);

// Fixed-point iteration on the Duhamel form u = V(t) f0 + int_0^t V(t-tau) F(u) dtau,
// midpoint quadrature on the dt grid. Throws PicardDivergence when the
// residual fails to reach picard_tol within max_picard_iters.
Trajectory picard_solve(const RadialField& f0, const ModelParams& params, const SolverConfig& cfg);

class PicardDivergence : public std::runtime_error {
 public:
  PicardDivergence(std::string msg, std::vector<double> residuals)
      : std::runtime_error(std::move(msg)), residual_history(std::move(residuals)) {}
  std::vector<double> residual_history;
};

// The product constant behind the Lipschitz function: (1 + sum_j |C_j|) * 2 A(1, s - 2 delta).
double lipschitz_product_constant(const ModelParams& params);

// L(a, b) = C (beta+1)(a+b) + C^2 (a^2 + a b + b^2) + C^{m+1} sum_{k<m} a^k b^{m-1-k};
// nondecreasing in both arguments, and ||F(u) - F(w)||_{s-2d} <= L(||u||_s, ||w||_s) ||u - w||_s.
double lipschitz_L(double a, double b, const ModelParams& params);

struct ExistenceEstimate {
  double T = 0.0;
  double M = 0.0;
  double L_at_boundary = 0.0;      // L(M + ||f0||_s, 0)
  double contraction_constant = 0.0;  // L(M+||f0||, M+||f0||) * K(T) < 1
  double kernel_q = 0.0;           // delta / alpha
  double kernel_c = 0.0;           // exp(-delta/alpha) (delta/(alpha gamma))^{delta/alpha}
};

// Largest horizon T (by bisection, re-verified by substitution) with
//   L(M+f0, 0) (M+f0) K(T) <= M   and   L(M+f0, M+f0) K(T) < 1,
// where K(T) = T + c T^{1-q}/(1-q) integrates the smoothing kernel.
ExistenceEstimate existence_time(double f0_norm, double M, const ModelParams& params);

struct DependenceReport {
  std::vector<double> times;
  std::vector<double> distance;   // ||u(t) - v(t)||_s per saved frame
  std::vector<double> envelope;   // e^{L(W,W) t} ||f0 - f1||_s + scheme allowance
  double initial_distance = 0.0;
  double lipschitz_WW = 0.0;
  double worst_slack = 0.0;  // min(envelope - distance), >= 0 when the bound holds
  bool passed = false;
};

// Runs both initial data and checks the discrete trajectories against the
// exponential envelope with Lipschitz rate L(W, W), W the largest H_s norm
// seen along either run.
DependenceReport continuous_dependence_check(const RadialField& f0, const RadialField& f1,
                                             const ModelParams& params, const SolverConfig& cfg);

struct GMonitor {
  std::vector<double> times;      // interior frames
  std::vector<double> g;          // G at those frames
  std::vector<double> dg_dt;      // centered differences
  std::vector<double> h_of_g;     // H(G)
  std::vector<double> defect;     // dg_dt - H(G)
  std::vector<double> tolerance;  // 10 dt max|G''| discretization allowance
  int violations = 0;             // frames with defect < -tolerance
};

// Diagnostic comparison of the discrete dG/dt against H(G); never asserts.
GMonitor monitor_G(const Trajectory& traj, const BlowupWeight& weight, const ModelParams& params);

}  // namespace nagumo
