#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nagumo/random_field.hpp"
#include "nagumo/solver.hpp"

using namespace nagumo;

namespace {

const Prime p3(3);
const TailPolicy kTail{40, 0.0};

ModelParams fig_right_params() {
  return ModelParams{p3, 1.0, 0.2, 0.7, 3, PDTerms({{1.0, 0.1}}), 2.0, true};
}

RadialField gauss_datum(int j_min, int j_max) {
  return RadialField::from_profile(p3, j_min, j_max, [](int j) {
    return 4.0 * std::exp(-std::pow(3.0, std::abs(j)) / 100.0);
  });
}

}  // namespace

TEST_CASE("rhs basics") {
  const ModelParams params = fig_right_params();
  SUBCASE("zero maps to zero") {
    const RadialField zero = RadialField::zero(p3, -4, 4);
    for (Method route : {Method::EulerKochubei, Method::EulerSpectral}) {
      CHECK(rhs(zero, params, kTail, route).field.norm_sup() == 0.0);
    }
  }
  SUBCASE("reaction alone vanishes at the unit value") {
    ModelParams no_pd = params;
    no_pd.pd = PDTerms{};
    const RadialField omega = RadialField::ball_indicator(p3, 0);
    const RhsResult r = rhs(omega, no_pd, kTail, Method::EulerSpectral);
    // On the inner ball the reaction part is F(1) = -1 + 1.7 - 0.7 = 0, so
    // only the diffusion contribution remains there.
    const OperatorResult d = taibleson_spectral(omega, no_pd.alpha, kTail);
    CHECK(std::abs(r.field.value_at_shell(-1) + no_pd.gamma * d.field.value_at_shell(-1)) < 1e-13);
  }
  SUBCASE("the single-forcing instance assembles term by term") {
    const RadialField u = gauss_datum(-6, 6);
    const RhsResult combined = rhs(u, params, kTail, Method::EulerSpectral);
    const OperatorResult diffusion = taibleson_spectral(u, params.alpha, kTail);
    const RadialField reaction = u.map([](double y) { return -y * y * y + 1.7 * y * y - 0.7 * y; });
    const OperatorResult forcing = taibleson_spectral(u.pow_int(3), 0.1, kTail);
    RadialField manual = linear_combine(1.0, reaction, -params.gamma, diffusion.field);
    manual = linear_combine(1.0, manual, 1.0, forcing.field);
    CHECK(max_abs_difference(combined.field, manual) <= 1e-13 * std::max(1.0, manual.norm_sup()));
  }
}

TEST_CASE("euler: pure diffusion is monotone and conserves mass within budget") {
  ModelParams params{p3, 1.0, 0.2, 0.0, 3, PDTerms{}, 2.0, false};
  SolverConfig cfg;
  cfg.j_min = -10;
  cfg.j_max = 10;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.save_every = 25;
  cfg.tail.tail_depth = 30;
  const Trajectory traj = euler_run(gauss_datum(-10, 10), params, cfg);
  REQUIRE(traj.times.size() > 5);
  for (std::size_t i = 1; i < traj.sup_norm.size(); ++i) {
    CHECK(traj.sup_norm[i] <= traj.sup_norm[i - 1] * (1.0 + 1e-14));
  }
  CHECK(std::abs(traj.mass.back() - traj.mass.front()) <= traj.error_budget + 1e-6);
  CHECK(!traj.blowup.has_value());
}

TEST_CASE("euler reports numeric overflow as a blow-up bracket, not a crash") {
  // A step size far beyond the stability limit blows the state up to inf/NaN
  // within a few steps; the run must stop with a bracket.
  ModelParams params{p3, 1.0, 0.8, 0.0, 3, PDTerms({{3.0, 0.5}}), 2.2, true};
  SolverConfig cfg;
  cfg.j_min = -6;
  cfg.j_max = 6;
  cfg.dt = 0.5;
  cfg.t_end = 10.0;
  cfg.save_every = 1;
  cfg.tail.tail_depth = 20;
  cfg.blowup_threshold = 1e6;
  const Trajectory traj = euler_run(gauss_datum(-6, 6), params, cfg);
  REQUIRE(traj.blowup.has_value());
  CHECK(traj.blowup->t_lo < traj.blowup->t_hi);
  CHECK(traj.blowup->sup_lo < cfg.blowup_threshold);
  CHECK(!(traj.blowup->sup_hi < cfg.blowup_threshold));  // inf or NaN count as crossed
}

TEST_CASE("euler rejects bad configurations") {
  const ModelParams params = fig_right_params();
  SolverConfig cfg;
  cfg.j_min = -2;
  cfg.j_max = 2;
  cfg.t_end = 0.1;
  CHECK_THROWS_AS(euler_run(gauss_datum(-6, 6), params, cfg), std::invalid_argument);
  SolverConfig bad = cfg;
  bad.dt = 0.0;
  CHECK_THROWS_AS(euler_run(gauss_datum(-2, 2), params, bad), std::invalid_argument);
  ModelParams bad_params = params;
  bad_params.s = 0.6;  // below 2 delta + 1/2
  CHECK_THROWS_AS(euler_run(gauss_datum(-2, 2), bad_params, cfg), std::invalid_argument);
}

TEST_CASE("picard: zero datum stays zero, residuals recorded") {
  ModelParams params = fig_right_params();
  SolverConfig cfg;
  cfg.j_min = -4;
  cfg.j_max = 4;
  cfg.dt = 1e-3;
  cfg.t_end = 0.02;
  cfg.save_every = 5;
  cfg.tail.tail_depth = 25;
  cfg.method = Method::Picard;
  const Trajectory traj = picard_solve(RadialField::zero(p3, -4, 4), params, cfg);
  for (double s : traj.sup_norm) CHECK(s == 0.0);
  CHECK(!traj.picard_residuals.empty());

  ModelParams wide = params;
  wide.pd = PDTerms({{1.0, 0.25}});
  wide.alpha = 0.2;  // delta >= alpha: the mild kernel is not integrable
  CHECK_THROWS_AS(picard_solve(RadialField::zero(p3, -4, 4), wide, cfg), std::invalid_argument);
}

TEST_CASE("one-step consistency: picard vs euler difference is second order") {
  const ModelParams params = fig_right_params();
  auto one_step_gap = [&](double dt) {
    SolverConfig cfg;
    cfg.j_min = -6;
    cfg.j_max = 6;
    cfg.dt = dt;
    cfg.t_end = dt;
    cfg.save_every = 1;
    cfg.tail.tail_depth = 30;
    const RadialField f0 = gauss_datum(-6, 6);
    const Trajectory eul = euler_run(f0, params, cfg);
    SolverConfig pcfg = cfg;
    pcfg.method = Method::Picard;
    pcfg.picard_tol = 1e-14;
    pcfg.max_picard_iters = 80;
    const Trajectory pic = picard_solve(f0, params, pcfg);
    return linear_combine(1.0, eul.snapshots.back(), -1.0, pic.snapshots.back()).norm_sobolev(params.s);
  };
  const double gap1 = one_step_gap(2e-3);
  const double gap2 = one_step_gap(1e-3);
  CHECK(gap1 / gap2 == doctest::Approx(4.0).epsilon(0.3));  // within [2.8, 5.2]
}

TEST_CASE("lipschitz function") {
  const ModelParams params = fig_right_params();
  const double C = lipschitz_product_constant(params);
  CHECK(C == doctest::Approx((1.0 + 1.0) * 2.0 * embedding_constant(p3, 2.0 - 0.2)).epsilon(1e-14));

  // Closed form at simple arguments.
  CHECK(lipschitz_L(0.0, 0.0, params) == 0.0);  // m = 3: the monomial sum vanishes at the origin
  ModelParams linear = params;
  linear.m = 1;
  CHECK(lipschitz_L(0.0, 0.0, linear) == doctest::Approx(lipschitz_product_constant(linear) *
                                                         lipschitz_product_constant(linear)).epsilon(1e-14));
  const double a = 0.7, b = 1.3;
  const double expected = C * (params.beta + 1.0) * (a + b) + C * C * (a * a + a * b + b * b) +
                          std::pow(C, 4) * (b * b + a * b + a * a);
  CHECK(lipschitz_L(a, b, params) == doctest::Approx(expected).epsilon(1e-13));

  ModelParams tight = params;
  tight.s = 1.15;  // s - 2 delta below 1: the embedding constant diverges
  CHECK_THROWS_AS(lipschitz_L(1.0, 1.0, tight), std::domain_error);
}

TEST_CASE("existence horizon") {
  const ModelParams params = fig_right_params();
  const ExistenceEstimate est = existence_time(1.0, 1.0, params);
  CHECK(est.T > 0.0);
  CHECK(est.contraction_constant < 1.0);
  const double K = est.T + est.kernel_c * std::pow(est.T, 1.0 - est.kernel_q) / (1.0 - est.kernel_q);
  CHECK(lipschitz_L(2.0, 0.0, params) * 2.0 * K <= 1.0 + 1e-12);
  CHECK(lipschitz_L(2.0, 2.0, params) * K < 1.0);

  // Larger data shrink the horizon.
  CHECK(existence_time(2.0, 1.0, params).T < est.T);

  // Without fractional forcing the kernel is linear and a horizon always exists.
  ModelParams plain = params;
  plain.pd = PDTerms{};
  const ExistenceEstimate linear = existence_time(5.0, 2.0, plain);
  CHECK(linear.kernel_q == 0.0);
  CHECK(linear.kernel_c == 1.0);
  CHECK(linear.T > 0.0);

  CHECK_THROWS_AS(existence_time(1.0, 0.0, params), std::invalid_argument);
}

TEST_CASE("continuous dependence") {
  ModelParams params = fig_right_params();
  SolverConfig cfg;
  cfg.j_min = -5;
  cfg.j_max = 5;
  cfg.dt = 5e-4;
  cfg.t_end = 0.02;
  cfg.save_every = 10;
  cfg.tail.tail_depth = 25;
  const RadialField f0 = gauss_datum(-5, 5);

  SUBCASE("identical data give identical trajectories") {
    const DependenceReport rep = continuous_dependence_check(f0, f0, params, cfg);
    CHECK(rep.initial_distance == 0.0);
    for (double d : rep.distance) CHECK(d == 0.0);
    CHECK(rep.passed);
  }
  SUBCASE("small perturbations stay inside the envelope") {
    const RadialField f1 = linear_combine(1.0, f0, 1e-6, RadialField::ball_indicator(p3, 0));
    const DependenceReport rep = continuous_dependence_check(f0, f1, params, cfg);
    CHECK(rep.initial_distance > 0.0);
    CHECK(rep.passed);
    CHECK(rep.worst_slack >= 0.0);
    // Convergence: shrinking the perturbation shrinks the largest frame
    // distance at the Gronwall rate.
    const RadialField f2 = linear_combine(1.0, f0, 1e-8, RadialField::ball_indicator(p3, 0));
    const DependenceReport rep2 = continuous_dependence_check(f0, f2, params, cfg);
    double worst1 = 0.0, worst2 = 0.0;
    for (std::size_t i = 0; i < rep.distance.size(); ++i) worst1 = std::max(worst1, rep.distance[i]);
    for (std::size_t i = 0; i < rep2.distance.size(); ++i) worst2 = std::max(worst2, rep2.distance[i]);
    const double horizon = rep2.times.empty() ? 0.0 : rep2.times.back();
    CHECK(worst2 <= std::exp(rep2.lipschitz_WW * horizon) * rep2.initial_distance + 1e-9);
    CHECK(worst2 < worst1);
  }
}

TEST_CASE("G monitor") {
  ModelParams params = fig_right_params();
  const BlowupWeight weight(p3, 0, params.alpha);

  SUBCASE("zero trajectory has zero defect") {
    SolverConfig cfg;
    cfg.j_min = -4;
    cfg.j_max = 4;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    cfg.save_every = 1;
    const Trajectory traj = euler_run(RadialField::zero(p3, -4, 4), params, cfg, &weight);
    const GMonitor mon = monitor_G(traj, weight, params);
    CHECK(mon.violations == 0);
    for (double d : mon.defect) CHECK(d == 0.0);
  }
  SUBCASE("pure semigroup trajectory follows the eigen-decay") {
    // dG/dt = -(gamma p^{(1-r)a} + beta) G exactly along V(t) u0.
    const RadialField u0 = gauss_datum(-6, 6);
    const double rate = params.gamma * weight.eigenvalue() + params.beta;
    Trajectory traj;
    const double dt = 1e-4;
    for (int i = 0; i <= 40; ++i) {
      const OperatorResult vi = semigroup_apply(u0, i * dt, params.gamma, params.alpha, params.beta, kTail);
      traj.times.push_back(i * dt);
      traj.snapshots.push_back(vi.field);
      traj.g_value.push_back(weight.pairing(vi.field));
      traj.sup_norm.push_back(vi.field.norm_sup());
      traj.l2_norm.push_back(vi.field.norm_l2());
      traj.hs_norm.push_back(0.0);
      traj.mass.push_back(vi.field.integral());
    }
    for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
      const double dg = (traj.g_value[i + 1] - traj.g_value[i - 1]) / (2.0 * dt);
      const double expected = -rate * traj.g_value[i];
      CHECK(dg == doctest::Approx(expected).epsilon(1e-6));
    }
    const GMonitor mon = monitor_G(traj, weight, params);
    CHECK(mon.times.size() == traj.times.size() - 2);
  }
}

TEST_CASE("euler order under dt halving with a per-run fine reference") {
  ModelParams params = fig_right_params();
  const RadialField f0 = gauss_datum(-8, 8);
  auto state_at = [&](double dt) {
    SolverConfig cfg;
    cfg.j_min = -8;
    cfg.j_max = 8;
    cfg.dt = dt;
    cfg.t_end = 0.04;
    cfg.save_every = 1 << 20;
    cfg.tail.tail_depth = 30;
    return euler_run(f0, params, cfg).snapshots.back();
  };
  auto err_vs_eighth = [&](double dt) {
    return linear_combine(1.0, state_at(dt), -1.0, state_at(dt / 8.0)).norm_sobolev(params.s);
  };
  const double ratio = err_vs_eighth(1e-3) / err_vs_eighth(5e-4);
  CHECK(ratio >= 1.7);
  CHECK(ratio <= 2.3);
}
