// lsi_ou.cpp — log-Sobolev machinery for the OU semigroup
#include "focklsi/lsi_ou.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklsi::ou {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

void check_beta(double beta) {
  if (beta <= 0.0)
    throw std::invalid_argument("inverse temperature must be > 0");
}

// diagonal of the thermal fixed point with occupation e^{-beta}
Eigen::VectorXd sigma_diag(double beta, int dim) {
  double x = std::exp(-beta);
  Eigen::VectorXd sd(dim);
  double w = 1.0 - x;
  for (int n = 0; n < dim; ++n) {
    sd[n] = w;
    w *= x;
  }
  return sd;
}
}  // namespace

double alpha_p_closed(double p, double beta) {
  check_beta(beta);
  if (p < 1.0 || p > 2.0)
    throw std::invalid_argument("alpha_p_closed: p must lie in [1,2]");
  if (p == 1.0) return 0.5 * std::sinh(0.5 * beta);
  if (p == 2.0) {
    double s = std::sinh(0.25 * beta);
    return 4.0 * s * s / beta;
  }
  double ph = p / (p - 1.0);
  return 0.25 * p * ph / beta * std::exp(0.5 * beta) *
         (1.0 - std::exp(-beta / p)) * (1.0 - std::exp(-beta / ph));
}

double weighted_p_norm(const Matrix& x, const State& sigma, double p) {
  if (p < 1.0) throw std::invalid_argument("weighted_p_norm: p must be >= 1");
  Matrix g = fock::matrix_power(sigma.rho, 0.5 / p);
  Matrix m = g * x * g;
  // |m| has the singular values of m on its spectrum; m need not be normal
  Eigen::JacobiSVD<Matrix> svd(m);
  double acc = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    acc += std::pow(svd.singularValues()[i], p);
  return std::pow(acc, 1.0 / p);
}

double dirichlet_form(const State& rho, double p, double beta) {
  check_beta(beta);
  if (p < 1.0 || p > 2.0)
    throw std::invalid_argument("dirichlet_form: p must lie in [1,2]");
  TruncatedSpace s(rho.dim());
  chan::SemigroupParams ou = chan::ou_generator(beta);
  if (p == 1.0) {
    State reg = fock::regularize_full_rank(rho);
    Matrix l = chan::lindbladian_apply(ou, reg.rho);
    Matrix lg = fock::matrix_log(reg.rho);
    Matrix nop = fock::number_op(s);
    double with_log = (l * lg).trace().real();
    double with_n = (l * nop).trace().real();
    double tr_l = l.trace().real();
    return 0.25 * (with_log - std::log(1.0 - std::exp(-beta)) * tr_l +
                   beta * with_n);
  }
  double ph = p / (p - 1.0);
  Matrix a = fock::annihilation(s);
  Matrix ad = a.adjoint();
  Matrix rp = fock::matrix_power(rho.rho, 1.0 / p);
  Matrix rh = fock::matrix_power(rho.rho, 1.0 / ph);
  double tr = rho.rho.trace().real();
  double nbar = fock::mean_photon(rho);
  double ta = (rh * a * rp * ad).trace().real();
  double tb = (rh * ad * rp * a).trace().real();
  return 0.25 * p * ph *
         (std::exp(-0.5 * beta) * ((nbar + tr) - std::exp(beta / p) * ta) +
          std::exp(0.5 * beta) * (nbar - std::exp(-beta / p) * tb));
}

double dirichlet_form_abstract(const State& rho, double p, double beta) {
  check_beta(beta);
  if (p <= 1.0 || p > 2.0)
    throw std::invalid_argument("dirichlet_form_abstract: p must lie in (1,2]");
  int d = rho.dim();
  double ph = p / (p - 1.0);
  Eigen::VectorXd sd = sigma_diag(beta, d);
  auto spow = [&](double e) {
    Eigen::VectorXcd v(d);
    for (int n = 0; n < d; ++n) v[n] = std::pow(sd[n], e);
    return Matrix(v.asDiagonal());
  };
  Matrix u = spow(-0.5 / ph) * fock::matrix_power(rho.rho, 1.0 / ph) *
             spow(-0.5 / ph);
  Matrix v = spow(-0.5 / p) * fock::matrix_power(rho.rho, 1.0 / p) *
             spow(-0.5 / p);
  Matrix lv = chan::heisenberg_apply_corrected(chan::ou_generator(beta), v);
  Matrix half = spow(0.5);
  double pairing = (half * u.adjoint() * half * lv).trace().real();
  return 0.25 * p * ph * pairing;
}

double lsi_ratio(const State& rho, double p, double beta) {
  double e = dirichlet_form(rho, p, beta);
  double d = fock::relative_entropy_vs_thermal(
      rho, fock::ThermalParam(std::exp(-beta)));
  if (d < 1e-14) return inf;
  return e / d;
}

double thermal_ratio(double y, double p, double beta) {
  check_beta(beta);
  if (!(y > 0.0 && y < 1.0))
    throw std::invalid_argument("thermal_ratio: y must lie in (0,1)");
  double xs = std::exp(-beta);
  // the ratio extends continuously through y = x*; nudge off the 0/0 point
  if (std::abs(y - xs) < 1e-12) y = xs + (y >= xs ? 1e-9 : -1e-9);
  double rel = std::log((1.0 - y) / (1.0 - xs)) +
               y / (1.0 - y) * (std::log(y) + beta);
  double e;
  if (p == 1.0) {
    e = 0.25 * std::exp(0.5 * beta) * (y - xs) * (std::log(y) + beta) /
        (1.0 - y);
  } else {
    if (p < 1.0 || p > 2.0)
      throw std::invalid_argument("thermal_ratio: p must lie in [1,2]");
    double ph = p / (p - 1.0);
    e = 0.25 * p * ph / (1.0 - y) *
        (std::exp(-0.5 * beta) *
             (1.0 - std::exp(beta / p) * std::pow(y, 1.0 / p)) +
         std::exp(0.5 * beta) *
             (y - std::exp(-beta / p) * std::pow(y, 1.0 / ph)));
  }
  return e / rel;
}

double phi(double x, double y, double p) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw std::invalid_argument("phi: x, y must lie in (0,1)");
  if (p < 1.0 || p > 2.0)
    throw std::invalid_argument("phi: p must lie in [1,2]");
  double x2 = x * x, y2 = y * y;
  double d = y2 * (std::log(y2) - std::log(x2)) +
             (1.0 - y2) * std::log((1.0 - y2) / (1.0 - x2));
  if (p == 1.0)
    return (x2 - y2) * (std::log(x2) - std::log(y2)) / (1.0 - x2) - d;
  double a = 2.0 / p, b = 2.0 - a;
  double first = -(std::pow(x, a) - std::pow(y, a)) *
                 (std::pow(x, b) - std::pow(y, b)) * std::log(x2) /
                 ((1.0 - std::pow(x, a)) * (1.0 - std::pow(x, b)));
  return first - d;
}

double phi_dx(double x, double y, double p) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw std::invalid_argument("phi_dx: x, y must lie in (0,1)");
  if (p < 1.0 || p > 2.0)
    throw std::invalid_argument("phi_dx: p must lie in [1,2]");
  double lx = std::log(x), ly = std::log(y);
  double x2 = x * x, y2 = y * y;
  double ga, gb, dga, dgb;
  if (p == 1.0) {
    // analytic limit of the conjugate-exponent factor as 2/p^ -> 0
    ga = (x2 - y2) / (1.0 - x2);
    dga = 2.0 * x * (1.0 - y2) / ((1.0 - x2) * (1.0 - x2));
    gb = (ly - lx) / lx;
    dgb = -ly / (x * lx * lx);
  } else {
    double a = 2.0 / p, b = 2.0 - a;
    double xa = std::pow(x, a), xb = std::pow(x, b);
    double ya = std::pow(y, a), yb = std::pow(y, b);
    ga = (xa - ya) / (1.0 - xa);
    gb = (xb - yb) / (1.0 - xb);
    dga = a * std::pow(x, a - 1.0) * (1.0 - ya) / ((1.0 - xa) * (1.0 - xa));
    dgb = b * std::pow(x, b - 1.0) * (1.0 - yb) / ((1.0 - xb) * (1.0 - xb));
  }
  double t1 = -2.0 * ga * gb / x;
  double t2 = -2.0 * lx * (dga * gb + ga * dgb);
  double t3 = -2.0 * x * (1.0 - y2) / (1.0 - x2);
  double t4 = 2.0 * y2 / x;
  return t1 + t2 + t3 + t4;
}

Eigen::VectorXd hermite_coeffs(int k, double beta) {
  check_beta(beta);
  if (k < 0) throw std::invalid_argument("hermite_coeffs: k must be >= 0");
  double nu = 1.0 / std::tanh(0.5 * beta);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(k + 1);
  Eigen::VectorXd cur = Eigen::VectorXd::Zero(k + 1);
  prev[0] = 1.0;  // h_0
  if (k == 0) return prev;
  cur[1] = 1.0;  // h_1
  for (int j = 1; j < k; ++j) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(k + 1);
    for (int i = 0; i <= j; ++i) next[i + 1] += cur[i];  // t * h_j
    next -= 0.5 * nu * double(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Matrix quadrature(cplx z, TruncatedSpace s) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw std::invalid_argument("quadrature: z must lie on the unit circle");
  Matrix a = fock::annihilation(s);
  return (z * a.adjoint() + std::conj(z) * a) / std::sqrt(2.0);
}

double eigen_check(int k, cplx z, double beta, TruncatedSpace s) {
  check_beta(beta);
  if (k < 0 || k > s.dim - 2)
    throw std::invalid_argument("eigen_check: need 0 <= k <= dim-2");
  Eigen::VectorXd c = hermite_coeffs(k, beta);
  Matrix q = quadrature(z, s);
  Matrix x = c[k] * Matrix::Identity(s.dim, s.dim);
  for (int j = k - 1; j >= 0; --j)
    x = x * q + c[j] * Matrix::Identity(s.dim, s.dim);
  Matrix lx = chan::heisenberg_apply_corrected(chan::ou_generator(beta), x);
  Matrix resid = lx - double(k) * std::sinh(0.5 * beta) * x;
  int m = s.dim - k - 1;  // rows and columns truncation cannot touch
  double denom = x.topLeftCorner(m, m).norm();
  return resid.topLeftCorner(m, m).norm() / denom;
}

Matrix DiagonalDecomposition::band_matrix(int l) const {
  Matrix out = Matrix::Zero(dim, dim);
  const Eigen::VectorXcd& v = band(l);
  for (int n = 0; n < v.size(); ++n) {
    if (l >= 0)
      out(n, n + l) = v[n];
    else
      out(n - l, n) = v[n];
  }
  return out;
}

Matrix DiagonalDecomposition::reconstruct() const {
  Matrix out = Matrix::Zero(dim, dim);
  for (int l = -(dim - 1); l < dim; ++l) out += band_matrix(l);
  return out;
}

DiagonalDecomposition diagonal_decomposition(const Matrix& x) {
  int d = static_cast<int>(x.rows());
  DiagonalDecomposition dec{d, {}};
  dec.bands.reserve(2 * d - 1);
  for (int l = -(d - 1); l < d; ++l) {
    int m = d - std::abs(l);
    Eigen::VectorXcd v(m);
    for (int n = 0; n < m; ++n) v[n] = l >= 0 ? x(n, n + l) : x(n - l, n);
    dec.bands.push_back(v);
  }
  return dec;
}

double band_norm_sq(const Eigen::VectorXcd& v, int l, ThermalParam x,
                    int dim) {
  int al = std::abs(l);
  if (v.size() != dim - al)
    throw std::invalid_argument("band_norm_sq: band length mismatch");
  double acc = 0.0;
  for (int n = 0; n < v.size(); ++n) {
    double w = (1.0 - x.x) * std::pow(x.x, 0.5 * double(2 * n + al));
    acc += w * std::norm(v[n]);
  }
  return acc;
}

double spectral_block_margin(const Eigen::VectorXcd& v, int l, double beta,
                             int dim) {
  check_beta(beta);
  int al = std::abs(l);
  Eigen::MatrixXcd b =
      chan::heisenberg_band_block_corrected(chan::ou_generator(beta), dim, al)
          .cast<cplx>();
  Eigen::VectorXcd lv = b * v;
  ThermalParam xs(std::exp(-beta));
  double pairing = 0.0;
  for (int n = 0; n < v.size(); ++n) {
    double w = (1.0 - xs.x) * std::pow(xs.x, 0.5 * double(2 * n + al));
    pairing += w * (std::conj(v[n]) * lv[n]).real();
  }
  double n2 = band_norm_sq(v, l, xs, dim);
  return pairing - double(al) * std::sinh(0.5 * beta) * n2;
}

bool spectral_block_check(const Matrix& x, double beta, double tol,
                          double* min_margin) {
  DiagonalDecomposition dec = diagonal_decomposition(x);
  double worst = inf;
  bool ok = true;
  for (int l = -(dec.dim - 1); l < dec.dim; ++l) {
    const Eigen::VectorXcd& v = dec.band(l);
    if (v.squaredNorm() == 0.0) continue;
    double m = spectral_block_margin(v, l, beta, dec.dim);
    worst = std::min(worst, m);
    if (m < -tol) ok = false;
  }
  if (min_margin) *min_margin = worst;
  return ok;
}

double ent22(const Matrix& x, const State& sigma) {
  Matrix g = fock::matrix_power(sigma.rho, 0.25);
  Matrix m = g * x * g;
  m = 0.5 * (m + m.adjoint());
  Matrix rho_x = m * m;
  double t = rho_x.trace().real();
  if (t < 1e-30) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_x);
  double tlogt_sum = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam > 0.0) tlogt_sum += lam * std::log(lam);
  }
  double cross = (rho_x * fock::matrix_log(sigma.rho)).trace().real();
  return tlogt_sum - t * std::log(t) - cross;
}

Matrix i22(const Matrix& band_matrix, const State& sigma) {
  Matrix g = fock::matrix_power(sigma.rho, 0.25);
  Matrix ginv = fock::matrix_power(sigma.rho, -0.25);
  Matrix m = g * band_matrix * g;
  Matrix abs_m = fock::matrix_power(m.adjoint() * m, 0.5);
  return ginv * abs_m * ginv;
}

Lemma45Report lemma45_check(const Matrix& x, const State& sigma,
                            const std::function<double(int)>& weight,
                            double tol) {
  int d = static_cast<int>(x.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument("lemma45_check: x must be positive");
  DiagonalDecomposition dec = diagonal_decomposition(x);
  double wnorm2 = 0.0;
  for (int l = -(d - 1); l < d; ++l) {
    double w = weight(l);
    if (w <= 0.0)
      throw std::invalid_argument("lemma45_check: weights must be positive");
    wnorm2 += w * w;
  }
  double lhs = ent22(x, sigma);
  double rhs = 0.0;
  int used = 0;
  for (int l = -(d - 1); l < d; ++l) {
    Matrix bm = dec.band_matrix(l);
    double n2 = weighted_p_norm(bm, sigma, 2.0);
    n2 *= n2;
    if (n2 <= 1e-24) continue;
    ++used;
    double w = weight(l);
    rhs += (std::log(wnorm2) - 2.0 * std::log(w)) * n2;
    rhs += ent22(i22(bm, sigma), sigma);
  }
  double margin = rhs - lhs;
  return {lhs, rhs, margin, used, margin >= -tol};
}

double multimode_alpha2_bound(int m, double beta) {
  check_beta(beta);
  if (m < 1) throw std::invalid_argument("multimode_alpha2_bound: m >= 1");
  double sh = std::sinh(0.5 * beta);
  double a2 = alpha_p_closed(2.0, beta);
  return 1.0 / ((2.0 + std::log(double(2 * m + 1))) / sh + 1.0 / a2);
}

double hypercontractive_time(double q_from, double q_to, double beta) {
  check_beta(beta);
  if (!(q_from > 1.0) || !(q_to >= q_from))
    throw std::invalid_argument(
        "hypercontractive_time: need 1 < q_from <= q_to");
  return std::log((q_to - 1.0) / (q_from - 1.0)) /
         (4.0 * alpha_p_closed(2.0, beta));
}

}  // namespace focklsi::ou
