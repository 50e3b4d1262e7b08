// lsi_ou.hpp — log-Sobolev machinery for the quantum Ornstein-Uhlenbeck
// semigroup: Dirichlet forms, sharp constants, Hermite eigenfunctions,
// band-diagonal lower bounds, entropy decompositions
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "focklsi/channels.hpp"
#include "focklsi/fock.hpp"

namespace focklsi::ou {

using fock::Matrix;
using fock::State;
using fock::ThermalParam;
using fock::TruncatedSpace;
using fock::cplx;

// Sharp log-Sobolev constant for 1 <= p <= 2:
//   p = 1: sinh(beta/2) / 2
//   p = 2: 4 sinh^2(beta/4) / beta
//   else : (p p^ / 4 beta) e^{beta/2} (1 - e^{-beta/p}) (1 - e^{-beta/p^})
// with p^ the conjugate exponent; the generic form is continuous at both ends.
double alpha_p_closed(double p, double beta);

// || x ||_{p,sigma} = ( tr | sigma^{1/2p} x sigma^{1/2p} |^p )^{1/p}, x Hermitian
double weighted_p_norm(const Matrix& x, const State& sigma, double p);

// Dirichlet form E_p of the OU semigroup at inverse temperature beta, via the
// expanded trace formula; p = 1 uses 1/4 tr( L(rho) (log rho - log sigma) ).
double dirichlet_form(const State& rho, double p, double beta);

// Same quantity through sigma-weighted sandwiches and the corrected Heisenberg
// generator; independent route kept as a cross-check.
double dirichlet_form_abstract(const State& rho, double p, double beta);

// E_p(rho) / D(rho || sigma_beta); +inf when rho equals the fixed point
double lsi_ratio(const State& rho, double p, double beta);

// the same ratio for thermal rho with occupation y, entirely in closed form
double thermal_ratio(double y, double p, double beta);

// Two-point comparison function in amplitude variables (occupations x^2, y^2):
//   phi = -(x^{2/p}-y^{2/p})(x^{2/p^}-y^{2/p^}) log x^2
//           / ((1-x^{2/p})(1-x^{2/p^}))  -  d(y^2 || x^2)
// with d the classical thermal relative entropy; phi >= 0, phi(y,y) = 0.
double phi(double x, double y, double p);

// closed-form partial derivative of phi in x (p = 1 via the analytic limit)
double phi_dx(double x, double y, double p);

// Monic Hermite-type polynomial coefficients (monomial basis, degree k) from
// h_{k+1} = t h_k - (nu/2) k h_{k-1}, nu = coth(beta/2).
Eigen::VectorXd hermite_coeffs(int k, double beta);

// field quadrature (z a^dag + conj(z) a) / sqrt(2), |z| = 1 required
Matrix quadrature(cplx z, TruncatedSpace s);

// Relative residual of L*(h_k(q_z)) = k sinh(beta/2) h_k(q_z) over the block
// of rows and columns 0..dim-k-2, where truncation cannot reach; the residual
// there is roundoff only.
double eigen_check(int k, cplx z, double beta, TruncatedSpace s);

// split a matrix into its Fock off-diagonal bands, l = -(dim-1)..dim-1
struct DiagonalDecomposition {
  int dim;
  std::vector<Eigen::VectorXcd> bands;  // index l + dim - 1

  const Eigen::VectorXcd& band(int l) const { return bands[l + dim - 1]; }
  Matrix band_matrix(int l) const;
  Matrix reconstruct() const;
};

DiagonalDecomposition diagonal_decomposition(const Matrix& x);

// KMS pairing <A,B>_sigma = tr( sigma^{1/2} A^dag sigma^{1/2} B ) restricted
// to band l: sum_n sqrt(sigma_n sigma_{n+l}) conj(a_n) b_n.
double band_norm_sq(const Eigen::VectorXcd& v, int l, ThermalParam x, int dim);

// <X_l, L* X_l>_sigma - |l| sinh(beta/2) ||X_l||_{2,sigma}^2 for one band of
// the OU generator; nonnegative up to roundoff for every band.
double spectral_block_margin(const Eigen::VectorXcd& v, int l, double beta,
                             int dim);

// all bands of x at once; fills min_margin if given
bool spectral_block_check(const Matrix& x, double beta, double tol = 1e-8,
                          double* min_margin = nullptr);

// Ent_{2,sigma}(X) = tr(rho_X log rho_X) - t log t - tr(rho_X log sigma) with
// rho_X = (sigma^{1/4} X sigma^{1/4})^2 and t = tr rho_X; X Hermitian PSD
double ent22(const Matrix& x, const State& sigma);

// I_{2,2}(X_l) = sigma^{-1/4} | sigma^{1/4} X_l sigma^{1/4} | sigma^{-1/4};
// diagonal whenever X_l lives on a single band
Matrix i22(const Matrix& band_matrix, const State& sigma);

// Band-decomposed entropy bound: for PSD X and positive weights w_l,
//   Ent_{2,sigma}(X) <= sum_l (log ||w||^2 - log w_l^2) ||X_l||^2_{2,sigma}
//                       + sum_l Ent_{2,sigma}(I_{2,2}(X_l)).
struct Lemma45Report {
  double lhs;
  double rhs;
  double margin;  // rhs - lhs
  int blocks_used;
  bool pass;
};

Lemma45Report lemma45_check(const Matrix& x, const State& sigma,
                            const std::function<double(int)>& weight,
                            double tol = 1e-8);

// 2-log-Sobolev constant surviving an m-mode passive dilation:
//   ( (2 + log(2m+1)) / sinh(beta/2) + 1/alpha_2 )^{-1}
double multimode_alpha2_bound(int m, double beta);

// time after which || Phi*_t ||_{q_from -> q_to} = 1: log((q_to-1)/(q_from-1))
// over 4 alpha_2
double hypercontractive_time(double q_from, double q_to, double beta);

}  // namespace focklsi::ou
