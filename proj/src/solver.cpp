#include "nagumo/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace nagumo {

void ModelParams::validate() const {
  if (gamma <= 0.0) throw std::invalid_argument("ModelParams: gamma must be > 0");
  if (alpha <= 0.0) throw std::invalid_argument("ModelParams: alpha must be > 0");
  if (beta < 0.0) throw std::invalid_argument("ModelParams: beta must be >= 0");
  if (m < 1) throw std::invalid_argument("ModelParams: m must be a positive integer");
  if (!(s - 2.0 * delta() > 0.5)) throw std::invalid_argument("ModelParams: requires s - 2 delta > 1/2");
}

Method method_from_string(const std::string& name) {
  if (name == "euler-kochubei") return Method::EulerKochubei;
  if (name == "euler-spectral") return Method::EulerSpectral;
  if (name == "picard") return Method::Picard;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_to_string(Method m) {
  switch (m) {
    case Method::EulerKochubei: return "euler-kochubei";
    case Method::EulerSpectral: return "euler-spectral";
    case Method::Picard: return "picard";
  }
  return "unknown";
}

namespace {

RadialField reaction_term(const RadialField& u, double beta) {
  return u.map([beta](double y) { return -y * y * y + (beta + 1.0) * y * y - beta * y; });
}

}  // namespace

RhsResult rhs(const RadialField& u, const ModelParams& params, const TailPolicy& tail, Method route) {
  double err = 0.0;
  RadialField acc = RadialField::zero(u.prime(), u.j_min(), u.j_max());

  if (route == Method::EulerKochubei) {
    // The exact operator integrates to zero, so the materialized window's own
    // integral is precisely the mass sent past it; charge it to the budget.
    const RadialField d = taibleson_kochubei(u, params.alpha, tail);
    err += params.gamma * std::abs(d.integral());
    acc = linear_combine(1.0, acc, -params.gamma, d);
  } else {
    OperatorResult d = taibleson_spectral(u, params.alpha, tail);
    err += params.gamma * d.error_bound;
    acc = linear_combine(1.0, acc, -params.gamma, d.field);
  }

  if (params.reaction_enabled) {
    acc = linear_combine(1.0, acc, 1.0, reaction_term(u, params.beta));
  }

  if (!params.pd.empty()) {
    const RadialField um = u.pow_int(params.m);
    if (route == Method::EulerKochubei) {
      for (const PDTerm& term : params.pd.terms()) {
        if (term.exponent == 0.0) {
          acc = linear_combine(1.0, acc, term.coef, um);
        } else {
          const RadialField g = taibleson_kochubei(um, term.exponent, tail);
          err += std::abs(term.coef) * std::abs(g.integral());
          acc = linear_combine(1.0, acc, term.coef, g);
        }
      }
    } else {
      OperatorResult forcing = apply_pd(um, params.pd, tail);
      err += forcing.error_bound;
      acc = linear_combine(1.0, acc, 1.0, forcing.field);
    }
  }
  return {std::move(acc), err};
}

namespace {

struct MarchFrame {
  double t;
  RadialField u;
};

// One Euler step restricted back to the working window. Adds the L2 tail
// bound and the L1 mass of the dropped outer spheres to the budget (the
// latter dominates the mass leak through the window boundary).
RadialField euler_step(const RadialField& u, double dt, const ModelParams& params, const SolverConfig& cfg, double& budget) {
  RhsResult r = rhs(u, params, cfg.tail, cfg.method);
  RadialField full = linear_combine(1.0, u, dt, r.field);
  const double p = u.prime().as_double();
  CompensatedSum dropped_mass;
  for (int k = cfg.j_max + 1; k <= full.j_max(); ++k) {
    dropped_mass.add(std::abs(full.value_at_shell(k)) * std::pow(p, k) * (1.0 - 1.0 / p));
  }
  auto [restricted, lost_l2] = full.retruncate(cfg.j_min, cfg.j_max);
  budget += dt * r.error_bound + lost_l2 + dropped_mass.value();
  return std::move(restricted);
}

bool finite_below_threshold(const RadialField& u, double threshold) {
  const double s = u.norm_sup();
  return std::isfinite(s) && s < threshold;
}

}  // namespace

Trajectory euler_run(const RadialField& f0, const ModelParams& params, const SolverConfig& cfg, const BlowupWeight* weight) {
  params.validate();
  if (cfg.dt <= 0.0) throw std::invalid_argument("euler_run: dt must be > 0");
  if (cfg.t_end < 0.0) throw std::invalid_argument("euler_run: t_end must be >= 0");
  if (cfg.save_every < 1) throw std::invalid_argument("euler_run: save_every must be >= 1");
  if (f0.j_min() < cfg.j_min || f0.j_max() > cfg.j_max) {
    throw std::invalid_argument("euler_run: initial datum window exceeds the solver window");
  }

  Trajectory traj;
  auto record = [&](double t, const RadialField& u) {
    traj.times.push_back(t);
    traj.snapshots.push_back(u);
    traj.sup_norm.push_back(u.norm_sup());
    traj.l2_norm.push_back(u.norm_l2());
    traj.hs_norm.push_back(u.norm_sobolev(params.s));
    traj.mass.push_back(u.integral());
    traj.g_value.push_back(weight != nullptr ? weight->pairing(u) : std::numeric_limits<double>::quiet_NaN());
  };

  RadialField u = f0.retruncate(cfg.j_min, cfg.j_max).first;
  record(0.0, u);
  MarchFrame last_saved{0.0, u};

  const long long n_steps = static_cast<long long>(std::llround(cfg.t_end / cfg.dt));
  bool crossed = false;
  for (long long step = 1; step <= n_steps; ++step) {
    u = euler_step(u, cfg.dt, params, cfg, traj.error_budget);
    const double t = static_cast<double>(step) * cfg.dt;
    if (!finite_below_threshold(u, cfg.blowup_threshold)) {
      crossed = true;
      record(t, u);
      break;
    }
    if (step % cfg.save_every == 0 || step == n_steps) {
      record(t, u);
      last_saved = {t, u};
    }
  }

  if (crossed) {
    // Bracket the crossing: re-run from the last saved frame below the
    // threshold with repeatedly halved steps.
    double fine_dt = cfg.dt;
    double t_lo = last_saved.t, t_hi = traj.times.back();
    double sup_lo = last_saved.u.norm_sup(), sup_hi = traj.sup_norm.back();
    for (int halving = 1; halving <= 10; ++halving) {
      fine_dt *= 0.5;
      RadialField v = last_saved.u;
      double t = last_saved.t;
      double prev_sup = v.norm_sup();
      double ignored_budget = 0.0;
      const long long guard = static_cast<long long>(std::llround((cfg.t_end - last_saved.t) / fine_dt)) + 4;
      for (long long i = 0; i < guard; ++i) {
        v = euler_step(v, fine_dt, params, cfg, ignored_budget);
        t += fine_dt;
        if (!finite_below_threshold(v, cfg.blowup_threshold)) {
          t_lo = t - fine_dt;
          t_hi = t;
          sup_lo = prev_sup;
          sup_hi = v.norm_sup();
          break;
        }
        prev_sup = v.norm_sup();
      }
    }
    traj.blowup = BlowupBracket{t_lo, t_hi, sup_lo, sup_hi};
  }
  return traj;
}

Trajectory picard_solve(const RadialField& f0, const ModelParams& params, const SolverConfig& cfg) {
  params.validate();
  if (!(params.delta() < params.alpha)) {
    throw std::invalid_argument("picard_solve: requires delta < alpha (integrable smoothing kernel)");
  }
  if (cfg.dt <= 0.0 || cfg.t_end <= 0.0) throw std::invalid_argument("picard_solve: needs dt > 0 and t_end > 0");
  const int n = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
  if (n < 1) throw std::invalid_argument("picard_solve: time grid is empty");
  const int work_min = cfg.j_min;
  const int work_max = cfg.j_max + cfg.tail.tail_depth;

  double budget = 0.0;
  // The linear -beta u term rides inside the semigroup, so the Duhamel
  // forcing keeps only -u^3 + (beta+1) u^2 (plus P(D) u^m). With the
  // reaction disabled there is no -beta u term to absorb.
  const double beta_semigroup = params.reaction_enabled ? params.beta : 0.0;
  auto restrict_to_work = [&](RadialField f) {
    auto [g, lost] = f.retruncate(work_min, work_max);
    budget += lost;
    return g;
  };
  auto apply_F = [&](const RadialField& v) {
    RadialField acc = RadialField::zero(v.prime(), v.j_min(), v.j_max());
    if (params.reaction_enabled) {
      const double beta = params.beta;
      acc = linear_combine(1.0, acc, 1.0, v.map([beta](double y) { return -y * y * y + (beta + 1.0) * y * y; }));
    }
    if (!params.pd.empty()) {
      OperatorResult forcing = apply_pd(v.pow_int(params.m), params.pd, cfg.tail);
      budget += cfg.dt * forcing.error_bound;
      acc = linear_combine(1.0, acc, 1.0, forcing.field);
    }
    return restrict_to_work(acc);
  };

  // Base line u^{(0)}(t_i) = V(t_i) f0.
  std::vector<RadialField> base;
  base.reserve(static_cast<std::size_t>(n) + 1);
  base.push_back(restrict_to_work(f0));
  for (int i = 1; i <= n; ++i) {
    OperatorResult v = semigroup_apply(f0, i * cfg.dt, params.gamma, params.alpha, beta_semigroup, cfg.tail);
    budget += v.error_bound;
    base.push_back(restrict_to_work(std::move(v.field)));
  }

  std::vector<RadialField> current = base;
  std::vector<double> residuals;
  bool converged = false;
  for (int iter = 0; iter < cfg.max_picard_iters && !converged; ++iter) {
    // Midpoint forcing on each subinterval.
    std::vector<RadialField> forcing;
    forcing.reserve(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
      const RadialField mid = linear_combine(0.5, current[static_cast<std::size_t>(l)], 0.5, current[static_cast<std::size_t>(l) + 1]);
      forcing.push_back(apply_F(mid));
    }
    std::vector<RadialField> next;
    next.reserve(static_cast<std::size_t>(n) + 1);
    next.push_back(base.front());
    double residual = 0.0;
    for (int i = 1; i <= n; ++i) {
      RadialField acc = base[static_cast<std::size_t>(i)];
      for (int l = 0; l < i; ++l) {
        const double lag = (static_cast<double>(i - l) - 0.5) * cfg.dt;
        OperatorResult kernel = semigroup_apply(forcing[static_cast<std::size_t>(l)], lag, params.gamma, params.alpha, beta_semigroup, cfg.tail);
        budget += cfg.dt * kernel.error_bound;
        acc = linear_combine(1.0, acc, cfg.dt, restrict_to_work(std::move(kernel.field)));
      }
      acc = restrict_to_work(std::move(acc));
      residual = std::max(residual, linear_combine(1.0, acc, -1.0, current[static_cast<std::size_t>(i)]).norm_sobolev(params.s));
      next.push_back(std::move(acc));
    }
    current = std::move(next);
    residuals.push_back(residual);
    converged = residual <= cfg.picard_tol;
  }
  if (!converged) {
    throw PicardDivergence("picard_solve: no convergence within max_picard_iters", residuals);
  }

  Trajectory traj;
  traj.error_budget = budget;
  traj.picard_residuals = residuals;
  for (int i = 0; i <= n; ++i) {
    if (i % cfg.save_every != 0 && i != n) continue;
    const RadialField& u = current[static_cast<std::size_t>(i)];
    traj.times.push_back(i * cfg.dt);
    traj.snapshots.push_back(u);
    traj.sup_norm.push_back(u.norm_sup());
    traj.l2_norm.push_back(u.norm_l2());
    traj.hs_norm.push_back(u.norm_sobolev(params.s));
    traj.mass.push_back(u.integral());
    traj.g_value.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return traj;
}

double lipschitz_product_constant(const ModelParams& params) {
  const double floor_index = params.s - 2.0 * params.delta();
  if (floor_index <= 1.0) throw std::domain_error("lipschitz constant: s - 2 delta must exceed 1");
  return (1.0 + params.pd.coef_abs_sum()) * 2.0 * embedding_constant(params.p, floor_index);
}

double lipschitz_L(double a, double b, const ModelParams& params) {
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("lipschitz_L: arguments must be >= 0");
  const double C = lipschitz_product_constant(params);
  double monomials = 0.0;
  for (int k = 0; k < params.m; ++k) {
    monomials += std::pow(a, k) * std::pow(b, params.m - 1 - k);  // 0^0 = 1
  }
  return C * (params.beta + 1.0) * (a + b) + C * C * (a * a + a * b + b * b) +
         std::pow(C, params.m + 1) * monomials;
}

ExistenceEstimate existence_time(double f0_norm, double M, const ModelParams& params) {
  params.validate();
  if (M <= 0.0) throw std::invalid_argument("existence_time: M must be > 0");
  if (f0_norm < 0.0) throw std::invalid_argument("existence_time: f0_norm must be >= 0");
  const double delta = params.delta();
  if (!(delta < params.alpha)) throw std::invalid_argument("existence_time: requires delta < alpha");

  const double q = delta / params.alpha;
  const double c = (delta == 0.0) ? 1.0 : std::exp(-q) * std::pow(delta / (params.alpha * params.gamma), q);
  const auto kernel = [&](double T) { return T + c * std::pow(T, 1.0 - q) / (1.0 - q); };

  const double x = M + f0_norm;
  const double L1 = lipschitz_L(x, 0.0, params);
  const double L2 = lipschitz_L(x, x, params);
  const auto feasible = [&](double T) { return L1 * x * kernel(T) <= M && L2 * kernel(T) < 1.0; };

  double lo = 1e-12;
  while (!feasible(lo)) {
    lo *= 1e-3;
    if (lo < 1e-300) throw std::runtime_error("existence_time: no positive horizon satisfies the estimates");
  }
  double hi = lo;
  while (feasible(hi) && hi < 1e12) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  if (!(L1 * x * kernel(lo) <= M && L2 * kernel(lo) < 1.0)) {
    throw std::runtime_error("existence_time: substitution check failed");
  }
  return {lo, M, L1, L2 * kernel(lo), q, c};
}

DependenceReport continuous_dependence_check(const RadialField& f0, const RadialField& f1,
                                             const ModelParams& params, const SolverConfig& cfg) {
  SolverConfig dense = cfg;
  dense.save_every = 1;  // the envelope rate needs the largest norm over every step
  const Trajectory a = (cfg.method == Method::Picard) ? picard_solve(f0, params, dense) : euler_run(f0, params, dense);
  const Trajectory b = (cfg.method == Method::Picard) ? picard_solve(f1, params, dense) : euler_run(f1, params, dense);

  double W = 0.0;
  for (double v : a.hs_norm) W = std::max(W, v);
  for (double v : b.hs_norm) W = std::max(W, v);

  DependenceReport report;
  report.initial_distance = linear_combine(1.0, f0, -1.0, f1).norm_sobolev(params.s);
  report.lipschitz_WW = lipschitz_L(W, W, params);
  const double allowance = a.error_budget + b.error_budget + 1e-9;
  const std::size_t frames = std::min(a.times.size(), b.times.size());
  report.worst_slack = std::numeric_limits<double>::infinity();
  report.passed = true;
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = a.times[i];
    const double dist = linear_combine(1.0, a.snapshots[i], -1.0, b.snapshots[i]).norm_sobolev(params.s);
    const double env = std::exp(report.lipschitz_WW * t) * report.initial_distance + allowance;
    report.times.push_back(t);
    report.distance.push_back(dist);
    report.envelope.push_back(env);
    report.worst_slack = std::min(report.worst_slack, env - dist);
    if (dist > env) report.passed = false;
  }
  return report;
}

GMonitor monitor_G(const Trajectory& traj, const BlowupWeight& weight, const ModelParams& params) {
  GMonitor mon;
  const std::size_t frames = traj.times.size();
  if (frames < 3) return mon;

  double alpha1 = params.delta();
  for (const PDTerm& term : params.pd.terms()) {
    if (term.exponent == params.pd.degree()) alpha1 = term.exponent;
  }
  const ComparisonParams cp{params.gamma, params.alpha, alpha1, params.beta, params.p.value(), weight.r()};

  // Discretization allowance from the largest second difference.
  double max_second = 0.0;
  for (std::size_t i = 1; i + 1 < frames; ++i) {
    const double dtf = 0.5 * (traj.times[i + 1] - traj.times[i - 1]);
    if (dtf <= 0.0) continue;
    const double second = (traj.g_value[i + 1] - 2.0 * traj.g_value[i] + traj.g_value[i - 1]) / (dtf * dtf);
    max_second = std::max(max_second, std::abs(second));
  }

  for (std::size_t i = 1; i + 1 < frames; ++i) {
    const double span = traj.times[i + 1] - traj.times[i - 1];
    if (span <= 0.0) continue;
    const double dg = (traj.g_value[i + 1] - traj.g_value[i - 1]) / span;
    const double h = comparison_H(traj.g_value[i], cp);
    const double tol = 10.0 * 0.5 * span * max_second;
    mon.times.push_back(traj.times[i]);
    mon.g.push_back(traj.g_value[i]);
    mon.dg_dt.push_back(dg);
    mon.h_of_g.push_back(h);
    mon.defect.push_back(dg - h);
    mon.tolerance.push_back(tol);
    if (dg - h < -tol) ++mon.violations;
  }
  return mon;
}

}  // namespace nagumo
