// meta_lsi.hpp — the meta log-Sobolev functional for phase-covariant
// semigroups: evaluation, thermal closed forms, the optimal thermal bound,
// rearrangement, and multimode extensions
#pragma once

#include <Eigen/Dense>

#include "focklsi/channels.hpp"
#include "focklsi/fock.hpp"

namespace focklsi::meta {

using fock::Matrix;
using fock::State;
using fock::TruncatedSpace;
using fock::cplx;

struct UpsilonParams {
  double nu0;
  double nu1;
  double omega;
  double p;
  UpsilonParams(double nu0_, double nu1_, double omega_, double p_);
  double phat() const { return p / (p - 1.0); }
};

// Upsilon(rho) for p > 1:
//   p^ [ nu0 ((nbar + tr rho) - T0) + nu1 (nbar - T1) ] + omega nbar + S(rho)
// with T0 = tr(rho^{1/p} a rho^{1/p^} a^dag), T1 = tr(rho^{1/p} a^dag
// rho^{1/p^} a); the (nbar + tr rho) term reads a a^dag as a^dag a + 1, which
// makes the value exact for states supported inside the truncation.  For
// p = 1 the quotient degenerates to <L(rho), log rho> + omega nbar + S(rho),
// evaluated on a full-rank regularization when rho is rank deficient.
double upsilon(const State& rho, const UpsilonParams& up);

// closed form on thermal states with occupation x
double upsilon_thermal(double x, const UpsilonParams& up);

struct EtaResult {
  double value;
  double argmin_x;      // 0 when the infimum sits at the x -> 0 boundary
  bool at_boundary;
};

// inf over thermal states of upsilon_thermal, including boundary limits
EtaResult eta_th(const UpsilonParams& up);

// eigenvalues of rho placed on the diagonal in decreasing order
State diagonal_rearrangement(const State& rho);

struct MetaReport {
  double value;             // Upsilon(rho)
  double rearranged_value;  // Upsilon of the rearrangement
  double eta;               // thermal infimum
  double chain_margin;      // value - rearranged_value
  double eta_margin;        // rearranged_value - eta
  bool pass;
};

// the two-step bound: Upsilon(rho) >= Upsilon(rearrangement) >= eta
MetaReport verify_meta_lsi(const State& rho, const UpsilonParams& up,
                           double tol_chain = 1e-8, double tol_eta = 1e-6);

// m-mode average: (1/m) sum_j [ per-mode Dirichlet part + omega nbar_j ]
// + S(rho)/m, over a state on modes of equal per-mode dimension
double upsilon_multimode(const State& rho, const UpsilonParams& up, int modes,
                         TruncatedSpace per_mode);

// Behavior of the multimode functional under Gaussian unitaries: passive
// rotations leave it unchanged, displacements shift it by (omega/m) times the
// mean-photon gain, squeezing cannot lower it.
struct Lemma31Report {
  double base_value;
  double displacement_delta;
  double displacement_predicted;
  double passive_delta;
  double squeezer_delta;
  double max_unitarity_defect;
};

Lemma31Report lemma31_checks(const State& rho2, const UpsilonParams& up,
                             TruncatedSpace per_mode, cplx xi, double theta,
                             double r);

// Upsilon parameters equivalent to the p-log-Sobolev inequality for the OU
// semigroup at inverse temperature beta, normalized by the sharp constant
UpsilonParams ou_mapped_params(double p, double beta);

// closed form for eta_th under ou_mapped_params; the infimum sits at
// x = e^{-beta}
double eta_th_ou_closed(double p, double beta);

}  // namespace focklsi::meta
