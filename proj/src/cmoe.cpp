// cmoe.cpp — entropy comparison along phase-covariant evolutions
#include "focklsi/cmoe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "focklsi/rng.hpp"

namespace focklsi::cmoe {

double thermal_entropy(double x) {
  if (x == 0.0) return 0.0;
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("thermal_entropy: x must lie in [0,1)");
  return -x * std::log(x) / (1.0 - x) - std::log(1.0 - x);
}

ThermalParam thermal_match_entropy(double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("thermal_match_entropy: entropy must be > 0");
  double lo = 1e-15, hi = 1.0 - 1e-15;
  if (s >= thermal_entropy(hi))
    throw std::invalid_argument("thermal_match_entropy: entropy too large");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (thermal_entropy(mid) < s ? lo : hi) = mid;
  }
  return ThermalParam(0.5 * (lo + hi));
}

double entropy_derivative(const State& rho, SemigroupParams p) {
  State reg = fock::regularize_full_rank(rho);
  Matrix l = chan::lindbladian_apply(p, reg.rho);
  return (l * fock::matrix_log(reg.rho)).trace().real();
}

double f_alpha(double x, double alpha, SemigroupParams p) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("f_alpha: x must lie in (0,1)");
  double lx = std::log(x);
  return ((p.nu1 * x - p.nu0) * lx - alpha * x * lx -
          alpha * (1.0 - x) * std::log(1.0 - x)) /
         (1.0 - x);
}

double g_fun(double x, SemigroupParams p) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("g_fun: x must lie in (0,1)");
  // a vanishing excitation rate leaves g degenerate; nudge it off zero
  double nu0 = std::max(p.nu0, 1e-6);
  return p.nu1 - nu0 + (1.0 - x) * (p.nu1 * x - nu0) / (x * std::log(x));
}

double solve_g(double alpha, SemigroupParams p) {
  if (!(alpha > 0.0)) throw std::invalid_argument("solve_g: alpha must be > 0");
  double lo = 1e-12, hi = 1.0 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g_fun(mid, p) > alpha ? lo : hi) = mid;  // g decreases on (0,1)
  }
  return 0.5 * (lo + hi);
}

Trajectory cmoe_verify(const State& rho, SemigroupParams p, double t_max,
                       int steps) {
  if (t_max < 0.0 || steps < 1)
    throw std::invalid_argument("cmoe_verify: need t_max >= 0 and steps >= 1");
  int d = rho.dim();
  chan::TruncatedSpace s(d);
  double s0 = fock::von_neumann_entropy(rho);
  double x0 = s0 > 1e-12 ? thermal_match_entropy(s0).x : 1e-15;
  double n0 = x0 / (1.0 - x0);
  double kappa = p.nu1 - p.nu0;

  auto nbar_closed = [&](double t) {
    if (std::abs(kappa) < 1e-14) return n0 + p.nu0 * t;
    double ninf = p.nu0 / kappa;
    return ninf + (n0 - ninf) * std::exp(-kappa * t);
  };

  chan::BandPropagator prop = chan::BandPropagator::build(p, s);
  Trajectory traj{x0, {}, false, std::numeric_limits<double>::infinity()};
  for (int i = 0; i <= steps; ++i) {
    double t = t_max * double(i) / double(steps);
    chan::EvolveResult ev =
        chan::clip_to_state(prop.evolve(rho.rho, t), rho.tail_mass);
    double s_rho = fock::von_neumann_entropy(ev.state);
    double n_ode = nbar_closed(t);
    double s_tau = thermal_entropy(n_ode / (1.0 + n_ode));
    double top2 = ev.state.rho(d - 1, d - 1).real() +
                  ev.state.rho(d - 2, d - 2).real();
    double tail = top2 + std::abs(ev.state.rho.trace().real() - 1.0);
    bool flagged = tail > 1e-6 || ev.flagged;
    TrajectoryPoint pt{t,    s_rho,
                       s_tau, s_rho - s_tau,
                       tail, fock::mean_photon(ev.state),
                       n_ode, flagged};
    traj.any_flagged = traj.any_flagged || flagged;
    traj.min_margin = std::min(traj.min_margin, pt.margin);
    traj.points.push_back(pt);
  }
  return traj;
}

Theorem52Report theorem52_check(SemigroupParams p, double alpha, int samples,
                                int dim, int max_rank, std::uint64_t seed,
                                double tol) {
  if (samples < 1 || max_rank < 1)
    throw std::invalid_argument("theorem52_check: bad sample counts");
  fock::TruncatedSpace s(dim);
  double x_star = solve_g(alpha, p);
  double f_min = f_alpha(x_star, alpha, p);
  double sampled = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    int rank = 1 + i % max_rank;
    State st = fock::random_state(s, rank, seed + std::uint64_t(i));
    double obj = entropy_derivative(st, p) +
                 alpha * fock::von_neumann_entropy(st);
    sampled = std::min(sampled, obj);
  }
  double margin = sampled - f_min;
  return {alpha, x_star, f_min, sampled, margin, samples, margin >= -tol};
}

}  // namespace focklsi::cmoe
