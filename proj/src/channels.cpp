// channels.cpp — phase-covariant Gaussian semigroups
#include "focklsi/channels.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklsi::chan {

SemigroupParams::SemigroupParams(double nu0_, double nu1_)
    : nu0(nu0_), nu1(nu1_) {
  if (nu0 < 0.0 || nu1 < 0.0 || nu0 + nu1 <= 0.0)
    throw std::invalid_argument("SemigroupParams: rates must be >= 0, not both 0");
}

namespace {

double coth_half(double beta) {
  if (beta <= 0.0) throw std::invalid_argument("inverse temperature must be > 0");
  return 1.0 / std::tanh(0.5 * beta);
}

void require_rate(double c) {
  if (c <= 0.0) throw std::invalid_argument("rate constant must be > 0");
}

}  // namespace

PhaseCovariantParams attenuator_params(double t, double c, double beta) {
  require_rate(c);
  double lam = std::exp(-2.0 * c * t);
  return {lam, coth_half(beta) * (1.0 - lam)};
}

PhaseCovariantParams amplifier_params(double t, double c, double beta) {
  require_rate(c);
  double lam = std::exp(2.0 * c * t);
  return {lam, coth_half(beta) * (lam - 1.0)};
}

PhaseCovariantParams additive_params(double t, double c) {
  require_rate(c);
  return {1.0, 2.0 * c * t};
}

SemigroupParams attenuator_generator(double c, double beta) {
  require_rate(c);
  double ch = coth_half(beta);
  return {c * (ch - 1.0), c * (ch + 1.0)};
}

SemigroupParams amplifier_generator(double c, double beta) {
  require_rate(c);
  double ch = coth_half(beta);
  return {c * (ch + 1.0), c * (ch - 1.0)};
}

SemigroupParams additive_generator(double c) {
  require_rate(c);
  return {c, c};
}

SemigroupParams ou_generator(double beta) {
  if (beta <= 0.0) throw std::invalid_argument("inverse temperature must be > 0");
  return {std::exp(-0.5 * beta), std::exp(0.5 * beta)};
}

GaussianStateParams gaussian_channel_action(GaussianStateParams g,
                                            PhaseCovariantParams pc) {
  return {std::sqrt(pc.lam) * g.mean, pc.lam * g.c + pc.gam};
}

bool is_cp(PhaseCovariantParams pc, double tol) {
  return pc.gam >= std::abs(1.0 - pc.lam) - tol;
}

Matrix lindbladian_apply(SemigroupParams p, const Matrix& rho) {
  TruncatedSpace s(static_cast<int>(rho.rows()));
  Matrix a = fock::annihilation(s);
  Matrix ad = a.adjoint();
  Matrix aad = a * ad;
  Matrix ada = ad * a;
  Matrix l0 = 0.5 * (aad * rho + rho * aad) - ad * rho * a;
  Matrix l1 = 0.5 * (ada * rho + rho * ada) - a * rho * ad;
  return p.nu0 * l0 + p.nu1 * l1;
}

Matrix heisenberg_apply(SemigroupParams p, const Matrix& x) {
  TruncatedSpace s(static_cast<int>(x.rows()));
  Matrix a = fock::annihilation(s);
  Matrix ad = a.adjoint();
  Matrix aad = a * ad;
  Matrix ada = ad * a;
  Matrix l0 = 0.5 * (aad * x + x * aad) - a * x * ad;
  Matrix l1 = 0.5 * (ada * x + x * ada) - ad * x * a;
  return p.nu0 * l0 + p.nu1 * l1;
}

Matrix heisenberg_apply_corrected(SemigroupParams p, const Matrix& x) {
  // replace a a^dag by a^dag a + 1; only the nu0 anticommutator changes, by
  // 1/2 {d, X} with d = a^dag a + 1 - a a^dag (nonzero only at the cutoff)
  TruncatedSpace s(static_cast<int>(x.rows()));
  Matrix a = fock::annihilation(s);
  Matrix d = a.adjoint() * a + Matrix::Identity(s.dim, s.dim) - a * a.adjoint();
  return heisenberg_apply(p, x) + p.nu0 * 0.5 * (d * x + x * d);
}

Matrix lindbladian_superop(SemigroupParams p, TruncatedSpace s) {
  int d = s.dim;
  Matrix a = fock::annihilation(s);
  Matrix ad = a.adjoint();
  Matrix aad = a * ad;
  Matrix ada = ad * a;
  Matrix id = Matrix::Identity(d, d);
  auto left = [&](const Matrix& m) {
    return Eigen::kroneckerProduct(id, m).eval();
  };
  auto right = [&](const Matrix& m) {
    return Eigen::kroneckerProduct(m.transpose().eval(), id).eval();
  };
  auto sandwich = [&](const Matrix& l, const Matrix& r) {
    return Eigen::kroneckerProduct(r.transpose().eval(), l).eval();
  };
  Matrix s0 = 0.5 * (left(aad) + right(aad)) - sandwich(ad, a);
  Matrix s1 = 0.5 * (left(ada) + right(ada)) - sandwich(a, ad);
  return p.nu0 * s0 + p.nu1 * s1;
}

namespace {

Eigen::MatrixXd band_block_impl(SemigroupParams p, int dim, int l,
                                bool corrected_top) {
  if (l < 0 || l >= dim)
    throw std::invalid_argument("band block: l out of range");
  int m = dim - l;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  // a a^dag is diag(k+1) except 0 at the cutoff level; corrected reads k+1
  auto top = [&](int k) {
    return corrected_top || k < dim - 1 ? double(k + 1) : 0.0;
  };
  for (int n = 0; n < m; ++n) {
    b(n, n) = p.nu0 * 0.5 * (top(n) + top(n + l)) +
              p.nu1 * 0.5 * double(2 * n + l);
    if (n + 1 < m)
      b(n + 1, n) = -p.nu0 * std::sqrt(double(n + 1) * double(n + l + 1));
    if (n >= 1) b(n - 1, n) = -p.nu1 * std::sqrt(double(n) * double(n + l));
  }
  return b;
}

using BandVec = Eigen::VectorXcd;

BandVec extract_band(const Matrix& x, int l) {
  int dim = static_cast<int>(x.rows());
  int m = dim - std::abs(l);
  BandVec v(m);
  for (int n = 0; n < m; ++n)
    v[n] = l >= 0 ? x(n, n + l) : x(n - l, n);
  return v;
}

void deposit_band(Matrix& x, int l, const BandVec& v) {
  int m = static_cast<int>(v.size());
  for (int n = 0; n < m; ++n) {
    if (l >= 0)
      x(n, n + l) = v[n];
    else
      x(n - l, n) = v[n];
  }
}

}  // namespace

Eigen::MatrixXd generator_band_block(SemigroupParams p, int dim, int l) {
  // bands l and -l evolve under the same block
  return band_block_impl(p, dim, std::abs(l), false);
}

Eigen::MatrixXd heisenberg_band_block_corrected(SemigroupParams p, int dim,
                                                int l) {
  // the Heisenberg block is the transpose: jumps swap raising and lowering
  return band_block_impl(p, dim, std::abs(l), true).transpose();
}

BandPropagator BandPropagator::build(SemigroupParams p, TruncatedSpace s,
                                     bool heisenberg) {
  BandPropagator bp{p, s.dim, {}};
  bp.blocks.reserve(s.dim);
  for (int l = 0; l < s.dim; ++l) {
    Eigen::MatrixXd b = band_block_impl(p, s.dim, l, false);
    bp.blocks.push_back(heisenberg ? Eigen::MatrixXd(b.transpose()) : b);
  }
  return bp;
}

Matrix BandPropagator::apply_generator(const Matrix& rho) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (int l = -(dim - 1); l < dim; ++l) {
    const Eigen::MatrixXd& b = blocks[std::abs(l)];
    deposit_band(out, l, b * extract_band(rho, l));
  }
  return out;
}

Matrix BandPropagator::evolve(const Matrix& rho, double t) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (int l = 0; l < dim; ++l) {
    Eigen::MatrixXd prop = (-t * blocks[l]).exp();
    deposit_band(out, l, prop * extract_band(rho, l));
    if (l > 0) deposit_band(out, -l, prop * extract_band(rho, -l));
  }
  return out;
}

Matrix evolve_rk45(const State& st, SemigroupParams p, double t,
                   double rel_tol, double abs_tol) {
  if (t < 0.0) throw std::invalid_argument("evolve_rk45: negative time");
  Matrix y = st.rho;
  if (t == 0.0) return y;
  auto f = [&](const Matrix& m) { return Matrix(-lindbladian_apply(p, m)); };

  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 3.0 / 10, a42 = -9.0 / 10, a43 = 6.0 / 5;
  static const double a51 = -11.0 / 54, a52 = 5.0 / 2, a53 = -70.0 / 27,
                      a54 = 35.0 / 27;
  static const double a61 = 1631.0 / 55296, a62 = 175.0 / 512,
                      a63 = 575.0 / 13824, a64 = 44275.0 / 110592,
                      a65 = 253.0 / 4096;
  static const double b1 = 37.0 / 378, b3 = 250.0 / 621, b4 = 125.0 / 594,
                      b6 = 512.0 / 1771;
  static const double e1 = b1 - 2825.0 / 27648, e3 = b3 - 18575.0 / 48384,
                      e4 = b4 - 13525.0 / 55296, e5 = -277.0 / 14336,
                      e6 = b6 - 1.0 / 4;

  double s_done = 0.0;
  double h = t / 100.0;
  int steps = 0;
  while (s_done < t) {
    if (++steps > 200000) throw std::runtime_error("evolve_rk45: step limit");
    h = std::min(h, t - s_done);
    Matrix k1 = f(y);
    Matrix k2 = f(y + h * a21 * k1);
    Matrix k3 = f(y + h * (a31 * k1 + a32 * k2));
    Matrix k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Matrix k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Matrix k6 =
        f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Matrix y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b6 * k6);
    Matrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6);
    double scale = abs_tol + rel_tol * std::max(y.cwiseAbs().maxCoeff(),
                                                y5.cwiseAbs().maxCoeff());
    double err_ratio = err.cwiseAbs().maxCoeff() / scale;
    if (err_ratio <= 1.0) {
      s_done += h;
      y = y5;
    }
    double grow = err_ratio > 0.0 ? 0.9 * std::pow(err_ratio, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, grow));
  }
  return y;
}

EvolveResult clip_to_state(const Matrix& raw, double inherited_tail,
                           double clip_budget) {
  double tr_before = raw.trace().real();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (raw + raw.adjoint()));
  Eigen::VectorXd vals = es.eigenvalues();
  double clipped = 0.0;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < 0.0) {
      clipped -= vals[i];
      vals[i] = 0.0;
    }
  }
  Matrix psd =
      es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  bool flagged = clipped > clip_budget;
  if (!flagged && clipped > 0.0) {
    double tr_after = psd.trace().real();
    if (tr_after > 0.0) psd *= tr_before / tr_after;
  }
  return {{psd, inherited_tail}, clipped, flagged};
}

EvolveResult evolve(const State& st, SemigroupParams p, double t,
                    EvolveMethod method, double clip_budget) {
  if (t < 0.0) throw std::invalid_argument("evolve: negative time");
  Matrix raw;
  if (method == EvolveMethod::band_expm) {
    TruncatedSpace s(st.dim());
    raw = BandPropagator::build(p, s).evolve(st.rho, t);
  } else {
    raw = evolve_rk45(st, p, t);
  }
  return clip_to_state(raw, st.tail_mass, clip_budget);
}

double generator_fd_check(SemigroupParams p, const State& st, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("generator_fd_check: dt must be > 0");
  TruncatedSpace s(st.dim());
  Matrix stepped = BandPropagator::build(p, s).evolve(st.rho, dt);
  Matrix resid = (stepped - st.rho) / dt + lindbladian_apply(p, st.rho);
  int inner = st.dim() - 2;
  return resid.topLeftCorner(inner, inner).norm();
}

SpectrumResult superop_spectrum(SemigroupParams p, TruncatedSpace s,
                                int edge_levels) {
  SpectrumResult out;
  for (int l = 0; l < s.dim; ++l) {
    Eigen::MatrixXd b = band_block_impl(p, s.dim, l, false);
    Eigen::EigenSolver<Eigen::MatrixXd> es(b);
    int m = s.dim - l;
    int tail = std::min(edge_levels, m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXcd vec = es.eigenvectors().col(i);
      double w = vec.tail(tail).squaredNorm() / vec.squaredNorm();
      out.modes.push_back(
          {es.eigenvalues()[i].real(), es.eigenvalues()[i].imag(), l, w});
    }
  }
  return out;
}

double spectral_gap(SemigroupParams p, TruncatedSpace s, double edge_tol,
                    double zero_tol) {
  SpectrumResult sp = superop_spectrum(p, s);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& m : sp.modes) {
    if (m.edge_weight >= edge_tol) continue;
    if (std::hypot(m.re, m.im) < zero_tol) continue;
    gap = std::min(gap, m.re);
  }
  return gap;
}

}  // namespace focklsi::chan
