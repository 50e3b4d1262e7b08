// channels.hpp — phase-covariant Gaussian semigroups: generator, band-diagonal
// propagator, dense superoperator, parameter maps, spectrum
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "focklsi/fock.hpp"

namespace focklsi::chan {

using fock::Matrix;
using fock::State;
using fock::TruncatedSpace;
using fock::cplx;

// Generator rates: L = nu0 L0 + nu1 L1 with
//   L0(rho) = 1/2 {a a^dag, rho} - a^dag rho a   (excitation)
//   L1(rho) = 1/2 {a^dag a, rho} - a rho a^dag   (decay)
// and states evolving as Phi_t = exp(-t L).
struct SemigroupParams {
  double nu0;
  double nu1;
  SemigroupParams(double nu0_, double nu1_);
};

// One-shot channel parameters: transmissivity/gain lambda and added noise gamma.
struct PhaseCovariantParams {
  double lam;
  double gam;
};

// Gaussian state summary acted on in closed form: first moment and the
// covariance parameter c (c = coth(beta/2) for a thermal state).
struct GaussianStateParams {
  cplx mean;
  double c;
};

// rate maps at time t and the fixed generators behind them
PhaseCovariantParams attenuator_params(double t, double c, double beta);
PhaseCovariantParams amplifier_params(double t, double c, double beta);
PhaseCovariantParams additive_params(double t, double c);
SemigroupParams attenuator_generator(double c, double beta);
SemigroupParams amplifier_generator(double c, double beta);
SemigroupParams additive_generator(double c);
// decay/excitation rates e^{+-beta/2}; the attenuator with c = sinh(beta/2)
SemigroupParams ou_generator(double beta);

GaussianStateParams gaussian_channel_action(GaussianStateParams g,
                                            PhaseCovariantParams pc);
// complete positivity of the (lambda, gamma) channel
bool is_cp(PhaseCovariantParams pc, double tol = 1e-12);

// Schroedinger generator L applied to a matrix (truncated ladder operators)
Matrix lindbladian_apply(SemigroupParams p, const Matrix& rho);

// Heisenberg adjoint L*: nu0 (1/2 {a a^dag, X} - a X a^dag) +
//                        nu1 (1/2 {a^dag a, X} - a^dag X a)
Matrix heisenberg_apply(SemigroupParams p, const Matrix& x);

// Same with a a^dag read as a^dag a + 1.  For any X supported on the truncated
// space this reproduces the untruncated adjoint exactly on every entry, since
// the discarded ladder paths through the cutoff level annihilate such X.
Matrix heisenberg_apply_corrected(SemigroupParams p, const Matrix& x);

// dense column-stacking superoperator of L (dim^2 x dim^2); test-scale only
Matrix lindbladian_superop(SemigroupParams p, TruncatedSpace s);

// L preserves each Fock off-diagonal band, so its superoperator splits into
// real tridiagonal blocks of size dim-l acting on the band vectors
// v_n = rho(n, n+l); the block for band -l equals the one for band l.
Eigen::MatrixXd generator_band_block(SemigroupParams p, int dim, int l);

// Heisenberg block (the transpose) with a a^dag read as a^dag a + 1, matching
// heisenberg_apply_corrected bandwise.
Eigen::MatrixXd heisenberg_band_block_corrected(SemigroupParams p, int dim,
                                                int l);

// Evolution and spectra from the band blocks at O(dim^4) total cost.
struct BandPropagator {
  SemigroupParams params;
  int dim;
  std::vector<Eigen::MatrixXd> blocks;  // generator block for band l = 0..dim-1

  static BandPropagator build(SemigroupParams p, TruncatedSpace s,
                              bool heisenberg = false);

  // reassemble L(rho) from the blocks (equals lindbladian_apply)
  Matrix apply_generator(const Matrix& rho) const;

  // exp(-t B_l) applied bandwise
  Matrix evolve(const Matrix& rho, double t) const;
};

struct EvolveResult {
  State state;
  double clipped_mass;  // total negative eigenvalue mass removed
  bool flagged;         // clipped mass too large to silently renormalize
};

enum class EvolveMethod { band_expm, rk45 };

// PSD projection shared by every evolution path: clamp negative eigenvalues,
// renormalize the removed mass when it stays under clip_budget, flag otherwise
EvolveResult clip_to_state(const Matrix& raw, double inherited_tail,
                           double clip_budget = 1e-8);

// Evolve a state for time t, project onto PSD, renormalize the clipped mass
// if below clip_budget, otherwise flag.
EvolveResult evolve(const State& st, SemigroupParams p, double t,
                    EvolveMethod method = EvolveMethod::band_expm,
                    double clip_budget = 1e-8);

// adaptive Cash-Karp integration of rho' = -L(rho); exposed for cross-checks
Matrix evolve_rk45(const State& st, SemigroupParams p, double t,
                   double rel_tol = 1e-10, double abs_tol = 1e-12);

// || (Phi_dt(rho) - rho)/dt + L(rho) ||_F over the interior block (last two
// levels dropped, where truncation first bites)
double generator_fd_check(SemigroupParams p, const State& st, double dt);

struct SpectrumMode {
  double re;
  double im;
  int band;
  double edge_weight;  // eigenvector mass on the last edge_levels entries
};

struct SpectrumResult {
  std::vector<SpectrumMode> modes;
};

SpectrumResult superop_spectrum(SemigroupParams p, TruncatedSpace s,
                                int edge_levels = 2);

// smallest nonzero real part over modes with edge_weight < edge_tol
double spectral_gap(SemigroupParams p, TruncatedSpace s,
                    double edge_tol = 1e-8, double zero_tol = 1e-8);

}  // namespace focklsi::chan
