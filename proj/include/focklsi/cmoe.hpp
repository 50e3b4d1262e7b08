// cmoe.hpp — entropy comparison along phase-covariant evolutions: thermal
// reference trajectories, entropy production, and the thermal optimality of
// the production-plus-entropy objective
#pragma once

#include <cstdint>
#include <vector>

#include "focklsi/channels.hpp"
#include "focklsi/fock.hpp"

namespace focklsi::cmoe {

using chan::SemigroupParams;
using fock::Matrix;
using fock::State;
using fock::ThermalParam;

// entropy of the thermal state with occupation x, in closed form
double thermal_entropy(double x);

// occupation whose thermal entropy equals s (bisection; s > 0)
ThermalParam thermal_match_entropy(double s);

// dS(Phi_t rho)/dt at t = 0, equal to <L(rho), log rho>; rank-deficient
// states are regularized to full rank first
double entropy_derivative(const State& rho, SemigroupParams p);

// entropy production plus alpha times entropy on thermal states:
//   [ (nu1 x - nu0) log x - alpha x log x - alpha (1-x) log(1-x) ] / (1-x)
double f_alpha(double x, double alpha, SemigroupParams p);

// stationarity function of f_alpha: the minimizer of f_alpha solves g(x) =
// alpha; g decreases from +inf to 0 on (0,1)
double g_fun(double x, SemigroupParams p);

// inverse of g_fun by bisection
double solve_g(double alpha, SemigroupParams p);

struct TrajectoryPoint {
  double t;
  double s_rho;      // entropy of the evolved state
  double s_tau;      // entropy of the entropy-matched thermal evolved in
                     // closed form
  double margin;     // s_rho - s_tau, nonnegative when the comparison holds
  double tail;       // top-two-level mass plus trace defect
  double nbar;       // mean photon number of the evolved state
  double nbar_ode;   // closed-form mean photon number of the thermal curve
  bool flagged;      // tail exceeded the truncation guard
};

struct Trajectory {
  double x0;         // occupation of the entropy-matched initial thermal
  std::vector<TrajectoryPoint> points;
  bool any_flagged;
  double min_margin;
};

// Entropy comparison: match a thermal state to the initial entropy, evolve
// both (the thermal one via its mean-photon ODE), and record the entropy gap
// on an evenly spaced time grid.
Trajectory cmoe_verify(const State& rho, SemigroupParams p, double t_max,
                       int steps);

// Thermal states minimize entropy production plus alpha-weighted entropy:
// sampled states against the thermal infimum f_alpha(solve_g(alpha)).
struct Theorem52Report {
  double alpha;
  double x_star;        // solve_g(alpha)
  double f_min;         // f_alpha at x_star
  double sampled_min;   // min over sampled states of the objective
  double min_margin;    // sampled_min - f_min
  int samples;
  bool pass;
};

Theorem52Report theorem52_check(SemigroupParams p, double alpha, int samples,
                                int dim, int max_rank, std::uint64_t seed,
                                double tol = 1e-6);

}  // namespace focklsi::cmoe
