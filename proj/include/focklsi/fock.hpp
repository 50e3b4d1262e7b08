// fock.hpp — truncated Fock-space primitives: ladder operators, states,
// entropies, operator functions, Gaussian unitaries
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace focklsi::fock {

using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using cplx = std::complex<double>;

// shared numerical policy
inline constexpr double eps_clip = 1e-13;  // eigenvalue floor inside fractional powers and logs
inline constexpr double eps_psd = 1e-10;   // largest tolerated negative eigenvalue of a state
inline constexpr double eps_tr = 1e-10;    // trace-one tolerance for normalized states

struct TruncatedSpace {
  int dim;  // levels 0..dim-1
  explicit TruncatedSpace(int n);
};

// A density-like matrix plus the mass its untruncated original carries beyond
// the cutoff (0 for anything constructed inside the truncated space).
struct State {
  Matrix rho;
  double tail_mass = 0.0;
  int dim() const { return static_cast<int>(rho.rows()); }
};

// Thermal occupation parameter x in (0,1): mean photon number x/(1-x).
struct ThermalParam {
  double x;
  explicit ThermalParam(double x_);
  double mean_photon() const { return x / (1.0 - x); }
};

// ladder and number operators; <n-1|a|n> = sqrt(n)
Matrix annihilation(TruncatedSpace s);
Matrix creation(TruncatedSpace s);
Matrix number_op(TruncatedSpace s);

// Diagonal (1-x) x^n without renormalization; tail_mass = x^dim.
State thermal_state(ThermalParam p, TruncatedSpace s);

// Haar-free Ginibre construction: G G^dag / tr with G of the given rank,
// supported on levels 0..support_dim-1 (support_dim = 0 means full support).
State random_state(TruncatedSpace s, int rank, std::uint64_t seed,
                   int support_dim = 0);

// Diagonal state from nonnegative weights (normalized here).
State diagonal_state(const RealVector& weights);

// checks hermiticity, eigenvalues >= -eps_psd, |tr - 1| <= eps_tr
bool is_valid_state(const State& st, double* worst_defect = nullptr);

// Hermitian fractional power: eigenvalues below eps_clip are treated as 0
// (0^e = 0 for e > 0), so rank-deficient states are safe for any e > 0.
Matrix matrix_power(const Matrix& h, double e);

// log of a positive matrix with eigenvalues floored at eps_clip
Matrix matrix_log(const Matrix& h);

double trace_norm(const Matrix& m);

double von_neumann_entropy(const State& st);

// tr rho (log rho - log sigma); +inf if rho has mass outside supp(sigma)
double relative_entropy(const State& rho, const State& sigma);

// Same against the thermal state with parameter x, using log sigma in closed
// form: tr(rho log sigma) = log(1-x) tr rho + log(x) tr(rho N).  Exact even
// where x^n underflows the eigenvalue floor.
double relative_entropy_vs_thermal(const State& rho, ThermalParam p);

double mean_photon(const State& st);

// mix with the maximally mixed state so the result has full rank
State regularize_full_rank(const State& st, double eps = 1e-12);

// Gaussian unitaries as truncated exponentials of their generators; the
// generators are exactly anti-Hermitian after truncation, so these matrices
// are unitary to machine precision.
Matrix displacement(cplx xi, TruncatedSpace s);
Matrix squeezer(double r, TruncatedSpace s);
// two-mode rotation exp(theta (a1^dag a2 - a2^dag a1)) on dim^2 levels
Matrix beam_splitter(double theta, TruncatedSpace per_mode);

cplx characteristic_function(const State& st, cplx xi);

// mode-1-major Kronecker product: A acts on the first mode
Matrix tensor(const Matrix& a, const Matrix& b);

// embed a single-mode operator at mode position `mode` (0-based) of `modes`
Matrix embed(const Matrix& op, int mode, int modes, TruncatedSpace per_mode);

}  // namespace focklsi::fock
