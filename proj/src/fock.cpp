// fock.cpp — truncated Fock-space primitives
#include "focklsi/fock.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "focklsi/rng.hpp"

namespace focklsi::fock {

TruncatedSpace::TruncatedSpace(int n) : dim(n) {
  if (n < 2) throw std::invalid_argument("TruncatedSpace: dim must be >= 2");
}

ThermalParam::ThermalParam(double x_) : x(x_) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("ThermalParam: x must lie in (0,1)");
}

Matrix annihilation(TruncatedSpace s) {
  Matrix a = Matrix::Zero(s.dim, s.dim);
  for (int n = 1; n < s.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix creation(TruncatedSpace s) { return annihilation(s).adjoint(); }

Matrix number_op(TruncatedSpace s) {
  Matrix n = Matrix::Zero(s.dim, s.dim);
  for (int k = 0; k < s.dim; ++k) n(k, k) = double(k);
  return n;
}

State thermal_state(ThermalParam p, TruncatedSpace s) {
  Matrix rho = Matrix::Zero(s.dim, s.dim);
  double w = 1.0 - p.x;
  for (int n = 0; n < s.dim; ++n) {
    rho(n, n) = w;
    w *= p.x;
  }
  // w is now (1-x) x^dim; the untruncated tail sums to x^dim
  return {rho, std::pow(p.x, double(s.dim))};
}

State random_state(TruncatedSpace s, int rank, std::uint64_t seed,
                   int support_dim) {
  if (rank < 1) throw std::invalid_argument("random_state: rank must be >= 1");
  int d = support_dim == 0 ? s.dim : support_dim;
  if (d < 1 || d > s.dim)
    throw std::invalid_argument("random_state: support_dim out of range");
  if (rank > d) throw std::invalid_argument("random_state: rank exceeds support");
  rng::CounterRng r(seed, 0x67696e6962726521ULL);
  Matrix g(d, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = r.cgauss();
  Matrix block = g * g.adjoint();
  block /= block.trace().real();
  Matrix rho = Matrix::Zero(s.dim, s.dim);
  rho.topLeftCorner(d, d) = block;
  return {rho, 0.0};
}

State diagonal_state(const RealVector& weights) {
  int d = static_cast<int>(weights.size());
  if (d < 2) throw std::invalid_argument("diagonal_state: need >= 2 weights");
  double tot = 0.0;
  for (int i = 0; i < d; ++i) {
    if (weights[i] < 0.0)
      throw std::invalid_argument("diagonal_state: negative weight");
    tot += weights[i];
  }
  if (tot <= 0.0) throw std::invalid_argument("diagonal_state: zero weight");
  Matrix rho = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) rho(i, i) = weights[i] / tot;
  return {rho, 0.0};
}

bool is_valid_state(const State& st, double* worst_defect) {
  double herm = (st.rho - st.rho.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(st.rho);
  double min_eig = es.eigenvalues().minCoeff();
  double tr_defect = std::abs(st.rho.trace().real() - (1.0 - st.tail_mass));
  double worst = std::max({herm, std::max(0.0, -min_eig), tr_defect});
  if (worst_defect) *worst_defect = worst;
  return herm <= eps_psd && min_eig >= -eps_psd && tr_defect <= eps_tr;
}

namespace {

// eigen-decomposition of the hermitized input, shared by the matrix functions
struct EigenPair {
  Matrix vecs;
  RealVector vals;
};

EigenPair hermitian_eigen(const Matrix& h) {
  Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  return {es.eigenvectors(), es.eigenvalues()};
}

}  // namespace

Matrix matrix_power(const Matrix& h, double e) {
  auto [v, w] = hermitian_eigen(h);
  RealVector pw(w.size());
  for (int i = 0; i < w.size(); ++i)
    pw[i] = w[i] < eps_clip ? 0.0 : std::pow(w[i], e);
  return v * pw.asDiagonal() * v.adjoint();
}

Matrix matrix_log(const Matrix& h) {
  auto [v, w] = hermitian_eigen(h);
  RealVector lg(w.size());
  for (int i = 0; i < w.size(); ++i)
    lg[i] = std::log(std::max(w[i], eps_clip));
  return v * lg.asDiagonal() * v.adjoint();
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double von_neumann_entropy(const State& st) {
  auto [v, w] = hermitian_eigen(st.rho);
  double s = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    if (w[i] > eps_clip) s -= w[i] * std::log(w[i]);
  }
  return s;
}

double relative_entropy(const State& rho, const State& sigma) {
  auto [v, w] = hermitian_eigen(sigma.rho);
  // mass of rho on the null space of sigma forces +inf
  double outside = 0.0;
  Matrix log_sigma = Matrix::Zero(sigma.rho.rows(), sigma.rho.cols());
  for (int i = 0; i < w.size(); ++i) {
    Matrix proj = v.col(i) * v.col(i).adjoint();
    if (w[i] <= eps_clip)
      outside += (proj * rho.rho).trace().real();
    else
      log_sigma += std::log(w[i]) * proj;
  }
  if (outside > 1e-12) return std::numeric_limits<double>::infinity();
  double s_rho = von_neumann_entropy(rho);
  return -s_rho - (rho.rho * log_sigma).trace().real();
}

double relative_entropy_vs_thermal(const State& rho, ThermalParam p) {
  double s_rho = von_neumann_entropy(rho);
  double tr = rho.rho.trace().real();
  double nbar = mean_photon(rho);
  return -s_rho - (std::log(1.0 - p.x) * tr + std::log(p.x) * nbar);
}

double mean_photon(const State& st) {
  double n = 0.0;
  for (int k = 0; k < st.dim(); ++k) n += double(k) * st.rho(k, k).real();
  return n;
}

State regularize_full_rank(const State& st, double eps) {
  int d = st.dim();
  Matrix mixed = (1.0 - eps) * st.rho +
                 (eps / double(d)) * Matrix::Identity(d, d) * st.rho.trace();
  return {mixed, st.tail_mass};
}

Matrix displacement(cplx xi, TruncatedSpace s) {
  Matrix a = annihilation(s);
  Matrix gen = xi * a.adjoint() - std::conj(xi) * a;
  return gen.exp();
}

Matrix squeezer(double r, TruncatedSpace s) {
  Matrix a = annihilation(s);
  Matrix gen = 0.5 * r * (a * a - (a * a).adjoint());
  return gen.exp();
}

Matrix beam_splitter(double theta, TruncatedSpace per_mode) {
  Matrix a = annihilation(per_mode);
  Matrix id = Matrix::Identity(per_mode.dim, per_mode.dim);
  Matrix a1 = tensor(a, id);
  Matrix a2 = tensor(id, a);
  Matrix gen = theta * (a1.adjoint() * a2 - a2.adjoint() * a1);
  return gen.exp();
}

cplx characteristic_function(const State& st, cplx xi) {
  TruncatedSpace s(st.dim());
  return (st.rho * displacement(xi, s)).trace();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix embed(const Matrix& op, int mode, int modes, TruncatedSpace per_mode) {
  if (mode < 0 || mode >= modes)
    throw std::invalid_argument("embed: mode index out of range");
  Matrix id = Matrix::Identity(per_mode.dim, per_mode.dim);
  Matrix out = mode == 0 ? op : id;
  for (int j = 1; j < modes; ++j) out = tensor(out, j == mode ? op : id);
  return out;
}

}  // namespace focklsi::fock
