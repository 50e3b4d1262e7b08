// meta_lsi.cpp — meta log-Sobolev functional
#include "focklsi/meta_lsi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "focklsi/lsi_ou.hpp"

namespace focklsi::meta {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

UpsilonParams::UpsilonParams(double nu0_, double nu1_, double omega_, double p_)
    : nu0(nu0_), nu1(nu1_), omega(omega_), p(p_) {
  if (nu0 < 0.0 || nu1 < 0.0)
    throw std::invalid_argument("UpsilonParams: rates must be >= 0");
  if (omega < 0.0)
    throw std::invalid_argument("UpsilonParams: omega must be >= 0");
  if (p < 1.0) throw std::invalid_argument("UpsilonParams: p must be >= 1");
}

double upsilon(const State& rho, const UpsilonParams& up) {
  TruncatedSpace s(rho.dim());
  Matrix a = fock::annihilation(s);
  Matrix ad = a.adjoint();
  double tr = rho.rho.trace().real();
  if (up.p == 1.0) {
    State reg = fock::regularize_full_rank(rho);
    Matrix lr = chan::lindbladian_apply({up.nu0, up.nu1}, reg.rho);
    Matrix lg = fock::matrix_log(reg.rho);
    double prod = (lr * lg).trace().real();
    return prod + up.omega * fock::mean_photon(reg) +
           fock::von_neumann_entropy(reg);
  }
  double ph = up.phat();
  Matrix rp = fock::matrix_power(rho.rho, 1.0 / up.p);
  Matrix rh = fock::matrix_power(rho.rho, 1.0 / ph);
  double t0 = (rp * a * rh * ad).trace().real();
  double t1 = (rp * ad * rh * a).trace().real();
  double nbar = fock::mean_photon(rho);
  return ph * (up.nu0 * ((nbar + tr) - t0) + up.nu1 * (nbar - t1)) +
         up.omega * nbar + fock::von_neumann_entropy(rho);
}

double upsilon_thermal(double x, const UpsilonParams& up) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("upsilon_thermal: x must lie in (0,1)");
  double s_th = -x * std::log(x) / (1.0 - x) - std::log(1.0 - x);
  double tail = up.omega * x / (1.0 - x) + s_th;
  if (up.p == 1.0)
    return (up.nu1 * x - up.nu0) * std::log(x) / (1.0 - x) + tail;
  double ph = up.phat();
  double head = ph / (1.0 - x) *
                (up.nu0 * (1.0 - std::pow(x, 1.0 / ph)) +
                 up.nu1 * (x - std::pow(x, 1.0 / up.p)));
  return head + tail;
}

namespace {

// value of upsilon_thermal as x -> 0; the x -> 1 limit is always +inf
double thermal_limit_zero(const UpsilonParams& up) {
  if (up.p > 1.0) return up.phat() * up.nu0;
  return up.nu0 > 0.0 ? inf : 0.0;
}

}  // namespace

EtaResult eta_th(const UpsilonParams& up) {
  constexpr int grid_n = 2000;
  const double lo = 1e-6, hi = 1.0 - 1e-6;
  const double lla = std::log(lo), llb = std::log(hi);
  double best_val = inf;
  int best_i = 0;
  std::vector<double> xs(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    xs[i] = std::exp(lla + (llb - lla) * double(i) / double(grid_n - 1));
    double v = upsilon_thermal(xs[i], up);
    if (v < best_val) {
      best_val = v;
      best_i = i;
    }
  }
  double a = xs[std::max(0, best_i - 1)];
  double b = xs[std::min(grid_n - 1, best_i + 1)];
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = upsilon_thermal(c, up);
  double fd = upsilon_thermal(d, up);
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = upsilon_thermal(c, up);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = upsilon_thermal(d, up);
    }
  }
  double x_min = 0.5 * (a + b);
  double v_min = upsilon_thermal(x_min, up);
  if (v_min > best_val) {
    v_min = best_val;
    x_min = xs[best_i];
  }
  double edge = thermal_limit_zero(up);
  if (edge < v_min) return {edge, 0.0, true};
  return {v_min, x_min, false};
}

State diagonal_rearrangement(const State& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.rho + rho.rho.adjoint()));
  Eigen::VectorXd vals = es.eigenvalues();  // ascending
  int d = rho.dim();
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) out(i, i) = std::max(vals[d - 1 - i], 0.0);
  return {out, rho.tail_mass};
}

MetaReport verify_meta_lsi(const State& rho, const UpsilonParams& up,
                           double tol_chain, double tol_eta) {
  double v = upsilon(rho, up);
  double vhat = upsilon(diagonal_rearrangement(rho), up);
  double eta = eta_th(up).value;
  double chain = v - vhat;
  double slack = vhat - eta;
  return {v, vhat, eta, chain, slack,
          chain >= -tol_chain && slack >= -tol_eta};
}

double upsilon_multimode(const State& rho, const UpsilonParams& up, int modes,
                         TruncatedSpace per_mode) {
  if (modes < 1) throw std::invalid_argument("upsilon_multimode: modes >= 1");
  int expect = 1;
  for (int j = 0; j < modes; ++j) expect *= per_mode.dim;
  if (rho.dim() != expect)
    throw std::invalid_argument("upsilon_multimode: dimension mismatch");
  Matrix a1 = fock::annihilation(per_mode);
  double tr = rho.rho.trace().real();
  double m = double(modes);

  if (up.p == 1.0) {
    State reg = fock::regularize_full_rank(rho);
    Matrix lg = fock::matrix_log(reg.rho);
    double acc = 0.0;
    for (int j = 0; j < modes; ++j) {
      Matrix aj = fock::embed(a1, j, modes, per_mode);
      Matrix adj = aj.adjoint();
      Matrix aad = aj * adj;
      Matrix ada = adj * aj;
      Matrix lj = up.nu0 * (0.5 * (aad * reg.rho + reg.rho * aad) -
                            adj * reg.rho * aj) +
                  up.nu1 * (0.5 * (ada * reg.rho + reg.rho * ada) -
                            aj * reg.rho * adj);
      double nbar_j = (ada * reg.rho).trace().real();
      acc += (lj * lg).trace().real() + up.omega * nbar_j;
    }
    return acc / m + fock::von_neumann_entropy(reg) / m;
  }

  double ph = up.phat();
  Matrix rp = fock::matrix_power(rho.rho, 1.0 / up.p);
  Matrix rh = fock::matrix_power(rho.rho, 1.0 / ph);
  double acc = 0.0;
  for (int j = 0; j < modes; ++j) {
    Matrix aj = fock::embed(a1, j, modes, per_mode);
    Matrix adj = aj.adjoint();
    double nbar_j = (adj * aj * rho.rho).trace().real();
    double t0 = (rp * aj * rh * adj).trace().real();
    double t1 = (rp * adj * rh * aj).trace().real();
    acc += ph * (up.nu0 * ((nbar_j + tr) - t0) + up.nu1 * (nbar_j - t1)) +
           up.omega * nbar_j;
  }
  return acc / m + fock::von_neumann_entropy(rho) / m;
}

Lemma31Report lemma31_checks(const State& rho2, const UpsilonParams& up,
                             TruncatedSpace per_mode, cplx xi, double theta,
                             double r) {
  int d2 = per_mode.dim * per_mode.dim;
  if (rho2.dim() != d2)
    throw std::invalid_argument("lemma31_checks: need a two-mode state");
  Matrix a1 = fock::annihilation(per_mode);
  Matrix disp = fock::embed(fock::displacement(xi, per_mode), 0, 2, per_mode);
  Matrix rot = fock::beam_splitter(theta, per_mode);
  Matrix sq = fock::embed(fock::squeezer(r, per_mode), 0, 2, per_mode);

  auto defect = [&](const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(d2, d2)).cwiseAbs().maxCoeff();
  };
  auto nbar_sum = [&](const Matrix& rho) {
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
      Matrix aj = fock::embed(a1, j, 2, per_mode);
      acc += (aj.adjoint() * aj * rho).trace().real();
    }
    return acc;
  };
  auto value_under = [&](const Matrix& u) {
    State moved{Matrix(u * rho2.rho * u.adjoint()), rho2.tail_mass};
    return upsilon_multimode(moved, up, 2, per_mode);
  };

  double base = upsilon_multimode(rho2, up, 2, per_mode);
  Lemma31Report rep{};
  rep.base_value = base;
  rep.displacement_delta = value_under(disp) - base;
  Matrix moved = disp * rho2.rho * disp.adjoint();
  rep.displacement_predicted =
      0.5 * up.omega * (nbar_sum(moved) - nbar_sum(rho2.rho));
  rep.passive_delta = value_under(rot) - base;
  rep.squeezer_delta = value_under(sq) - base;
  rep.max_unitarity_defect =
      std::max({defect(disp), defect(rot), defect(sq)});
  return rep;
}

UpsilonParams ou_mapped_params(double p, double beta) {
  if (p < 1.0 || p > 2.0)
    throw std::invalid_argument("ou_mapped_params: p must lie in [1,2]");
  double ap = ou::alpha_p_closed(p, beta);
  double exponent = (0.5 - 1.0 / p) * beta;
  double nu0 = 0.25 * p * std::exp(exponent) / ap;
  double nu1 = 0.25 * p * std::exp(-exponent) / ap;
  return {nu0, nu1, 0.0, p};
}

double eta_th_ou_closed(double p, double beta) {
  if (p < 1.0 || p > 2.0)
    throw std::invalid_argument("eta_th_ou_closed: p must lie in [1,2]");
  double ap = ou::alpha_p_closed(p, beta);
  double base = -std::log(1.0 - std::exp(-beta));
  if (p == 1.0) return base + 0.25 * beta * std::exp(-0.5 * beta) / ap;
  double ph = p / (p - 1.0);
  double diff = std::exp(-0.5 * beta) - std::exp((0.5 - 1.0 / p) * beta);
  return base - 0.25 * p * ph * diff / ap;
}

}  // namespace focklsi::meta
