// test_channels.cpp — semigroup generators, band evolution, spectra, and the
// Gaussian parameter maps
#include <cmath>
#include <complex>

#include "doctest.h"
#include "focklsi/channels.hpp"
#include "focklsi/fock.hpp"
#include "focklsi/rng.hpp"

using namespace focklsi;
using fock::Matrix;
using fock::State;
using fock::TruncatedSpace;
using fock::cplx;

TEST_SUITE("channels") {

TEST_CASE("rate maps follow the hyperbolic parameterization") {
  double c = 0.7, beta = 1.3;
  double coth = 1.0 / std::tanh(0.5 * beta);
  chan::SemigroupParams att = chan::attenuator_generator(c, beta);
  CHECK(att.nu0 == doctest::Approx(c * (coth - 1.0)).epsilon(1e-14));
  CHECK(att.nu1 == doctest::Approx(c * (coth + 1.0)).epsilon(1e-14));
  chan::SemigroupParams amp = chan::amplifier_generator(c, beta);
  CHECK(amp.nu0 == doctest::Approx(att.nu1).epsilon(1e-14));
  CHECK(amp.nu1 == doctest::Approx(att.nu0).epsilon(1e-14));
  chan::SemigroupParams add = chan::additive_generator(c);
  CHECK(add.nu0 == c);
  CHECK(add.nu1 == c);
  // the reference semigroup is the attenuator run at rate sinh(beta/2)
  chan::SemigroupParams ou = chan::ou_generator(beta);
  chan::SemigroupParams att_s =
      chan::attenuator_generator(std::sinh(0.5 * beta), beta);
  CHECK(ou.nu0 == doctest::Approx(std::exp(-0.5 * beta)).epsilon(1e-14));
  CHECK(ou.nu1 == doctest::Approx(std::exp(0.5 * beta)).epsilon(1e-14));
  CHECK(ou.nu0 == doctest::Approx(att_s.nu0).epsilon(1e-13));
  CHECK(ou.nu1 == doctest::Approx(att_s.nu1).epsilon(1e-13));
  CHECK_THROWS_AS(chan::SemigroupParams(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(chan::SemigroupParams(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("time-dependent channel parameters stay completely positive") {
  double c = 0.6, beta = 0.9;
  for (double t : {0.05, 0.3, 1.0, 3.0}) {
    CHECK(chan::is_cp(chan::attenuator_params(t, c, beta)));
    CHECK(chan::is_cp(chan::amplifier_params(t, c, beta)));
    CHECK(chan::is_cp(chan::additive_params(t, c)));
  }
  CHECK(!chan::is_cp({0.5, 0.2}));
  CHECK(chan::is_cp({0.5, 0.5}));  // boundary case
  chan::PhaseCovariantParams att = chan::attenuator_params(0.4, c, beta);
  double lam = std::exp(-2.0 * c * 0.4);
  CHECK(att.lam == doctest::Approx(lam).epsilon(1e-14));
  CHECK(att.gam ==
        doctest::Approx((1.0 / std::tanh(0.5 * beta)) * (1.0 - lam))
            .epsilon(1e-14));
}

TEST_CASE("gaussian channel actions compose as a semigroup") {
  double c = 0.6, beta = 0.9;
  chan::GaussianStateParams g0{cplx(0.4, -0.2), 2.5};
  for (double t : {0.3, 1.1}) {
    for (double u : {0.2, 0.8}) {
      chan::GaussianStateParams via_two = chan::gaussian_channel_action(
          chan::gaussian_channel_action(g0, chan::attenuator_params(t, c, beta)),
          chan::attenuator_params(u, c, beta));
      chan::GaussianStateParams direct = chan::gaussian_channel_action(
          g0, chan::attenuator_params(t + u, c, beta));
      CHECK(std::abs(via_two.mean - direct.mean) < 1e-13);
      CHECK(std::abs(via_two.c - direct.c) < 1e-13);
    }
  }
}

TEST_CASE("the generator preserves trace and hermiticity exactly") {
  TruncatedSpace s(18);
  chan::SemigroupParams p = chan::attenuator_generator(0.5, 1.0);
  State rho = fock::random_state(s, 5, 11);
  Matrix l = chan::lindbladian_apply(p, rho.rho);
  CHECK(std::abs(l.trace()) < 1e-14);
  CHECK((l - l.adjoint()).norm() < 1e-13);
}

TEST_CASE("the truncated thermal state is an exact fixed point") {
  TruncatedSpace s(25);
  double beta = 1.0;
  State sigma =
      fock::thermal_state(fock::ThermalParam(std::exp(-beta)), s);
  Matrix l = chan::lindbladian_apply(chan::ou_generator(beta), sigma.rho);
  CHECK(l.cwiseAbs().maxCoeff() < 1e-13);
  // the attenuator at any rate shares the same fixed point
  Matrix l2 = chan::lindbladian_apply(chan::attenuator_generator(0.3, beta),
                                      sigma.rho);
  CHECK(l2.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("schrodinger and heisenberg generators are trace duals") {
  TruncatedSpace s(12);
  chan::SemigroupParams p = chan::amplifier_generator(0.4, 0.8);
  State rho = fock::random_state(s, 4, 21);
  Matrix x = Matrix::Zero(12, 12);
  rng::CounterRng r(33, 5);
  for (int j = 0; j < 12; ++j)
    for (int i = 0; i < 12; ++i) x(i, j) = r.cgauss();
  cplx lhs = (chan::lindbladian_apply(p, rho.rho) * x).trace();
  cplx rhs = (rho.rho * chan::heisenberg_apply(p, x)).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("the corrected heisenberg map restores the truncated corner") {
  TruncatedSpace s(10);
  chan::SemigroupParams p = chan::ou_generator(1.0);
  // observables supported away from the edge see no correction at all
  Matrix x = Matrix::Zero(10, 10);
  rng::CounterRng r(17, 2);
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) x(i, j) = r.cgauss();
  CHECK((chan::heisenberg_apply_corrected(p, x) - chan::heisenberg_apply(p, x))
            .norm() < 1e-14);
  // paired with a state that leaves the top level empty, the corrected map
  // reproduces the exact mean-photon flow: tr(rho L*(n)) = (nu1-nu0) nbar - nu0
  Matrix n_op = fock::number_op(s);
  for (int rank : {1, 4}) {
    State rho = fock::random_state(s, rank, 29 + rank, 9);
    double flow =
        (rho.rho * chan::heisenberg_apply_corrected(p, n_op)).trace().real();
    double expect = (p.nu1 - p.nu0) * fock::mean_photon(rho) - p.nu0;
    CHECK(flow == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("band blocks reproduce the dense generator action") {
  TruncatedSpace s(15);
  chan::SemigroupParams p = chan::attenuator_generator(0.8, 1.4);
  State rho = fock::random_state(s, 6, 3);
  chan::BandPropagator bp = chan::BandPropagator::build(p, s);
  CHECK((bp.apply_generator(rho.rho) - chan::lindbladian_apply(p, rho.rho))
            .norm() < 1e-12);
  // same for the adjoint propagator
  Matrix x = Matrix::Zero(15, 15);
  rng::CounterRng r(8, 1);
  for (int j = 0; j < 15; ++j)
    for (int i = 0; i < 15; ++i) x(i, j) = r.cgauss();
  chan::BandPropagator bh = chan::BandPropagator::build(p, s, true);
  CHECK((bh.apply_generator(x) - chan::heisenberg_apply(p, x)).norm() < 1e-11);
}

TEST_CASE("corrected heisenberg blocks act bandwise") {
  int dim = 12;
  TruncatedSpace s(dim);
  chan::SemigroupParams p = chan::ou_generator(0.7);
  Matrix x = Matrix::Zero(dim, dim);
  rng::CounterRng r(14, 3);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) x(i, j) = r.cgauss();
  Matrix dense = chan::heisenberg_apply_corrected(p, x);
  for (int l : {0, 1, 3}) {
    Eigen::MatrixXd b = chan::heisenberg_band_block_corrected(p, dim, l);
    Eigen::VectorXcd band(dim - l);
    for (int n = 0; n < dim - l; ++n) band[n] = x(n, n + l);
    Eigen::VectorXcd got = b.cast<cplx>() * band;
    for (int n = 0; n < dim - l; ++n)
      CHECK(std::abs(got[n] - dense(n, n + l)) < 1e-12);
  }
}

TEST_CASE("band blocks are symmetric in the band index") {
  chan::SemigroupParams p = chan::amplifier_generator(0.5, 1.1);
  for (int l : {1, 4}) {
    CHECK((chan::generator_band_block(p, 10, l) -
           chan::generator_band_block(p, 10, -l))
              .norm() == 0.0);
  }
}

TEST_CASE("evolution routes agree: band exponentials vs adaptive integration") {
  TruncatedSpace s(20);
  chan::SemigroupParams p = chan::ou_generator(1.0);
  State rho = fock::random_state(s, 4, 51);
  chan::BandPropagator bp = chan::BandPropagator::build(p, s);
  Matrix via_bands = bp.evolve(rho.rho, 0.7);
  Matrix via_rk = chan::evolve_rk45(rho, p, 0.7);
  CHECK((via_bands - via_rk).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((bp.evolve(rho.rho, 0.0) - rho.rho).norm() < 1e-14);
  // semigroup property
  Matrix two_step = bp.evolve(bp.evolve(rho.rho, 0.3), 0.4);
  CHECK((two_step - via_bands).norm() < 1e-11);
  // trace is conserved along the flow
  CHECK(std::abs(via_bands.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("thermal inputs stay thermal along the attenuator flow") {
  TruncatedSpace s(40);
  double beta = 1.0, c = 0.5, y = 0.3, t = 0.8;
  chan::SemigroupParams p = chan::attenuator_generator(c, beta);
  State tau = fock::thermal_state(fock::ThermalParam(y), s);
  chan::EvolveResult ev = chan::evolve(tau, p, t);
  CHECK(!ev.flagged);
  double n0 = y / (1.0 - y);
  double kappa = p.nu1 - p.nu0;
  double nt = p.nu0 / kappa + (n0 - p.nu0 / kappa) * std::exp(-kappa * t);
  State expect =
      fock::thermal_state(fock::ThermalParam(nt / (1.0 + nt)), s);
  CHECK((ev.state.rho - expect.rho).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("clipping flags evolutions that lose real mass") {
  Matrix raw = Matrix::Zero(6, 6);
  raw(0, 0) = 0.9;
  raw(1, 1) = 0.2;
  raw(2, 2) = -0.1;  // unphysical negative weight
  chan::EvolveResult small = chan::clip_to_state(raw, 0.0, 0.5);
  CHECK(!small.flagged);
  CHECK(small.clipped_mass == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fock::is_valid_state(small.state));
  chan::EvolveResult strict = chan::clip_to_state(raw, 0.0, 1e-8);
  CHECK(strict.flagged);
}

TEST_CASE("amplification piles mass at the truncation edge") {
  // the truncated generator is itself a Lindblad generator on the retained
  // levels, so evolution stays a valid state and clipping never fires; the
  // truncation artifact of amplification is mass collecting at the top
  TruncatedSpace s(20);
  State rho = fock::random_state(s, 3, 77);  // full support
  chan::EvolveResult ev =
      chan::evolve(rho, chan::amplifier_generator(0.5, 1.0), 2.0);
  CHECK(!ev.flagged);
  CHECK(ev.clipped_mass < 1e-10);
  double top2 =
      ev.state.rho(19, 19).real() + ev.state.rho(18, 18).real();
  CHECK(top2 > 1e-3);
}

TEST_CASE("finite differences of the flow converge at first order") {
  TruncatedSpace s(16);
  State rho = fock::random_state(s, 3, 61);
  for (const auto& p :
       {chan::attenuator_generator(0.5, 1.0), chan::amplifier_generator(0.5, 1.0),
        chan::additive_generator(0.5)}) {
    double r1 = chan::generator_fd_check(p, rho, 1e-3);
    double r2 = chan::generator_fd_check(p, rho, 5e-4);
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("the superoperator spectrum carries the expected gap") {
  double beta = 1.0;
  chan::SemigroupParams p = chan::ou_generator(beta);
  // one block per band index l >= 0 of size dim - l
  chan::SpectrumResult sp = chan::superop_spectrum(p, TruncatedSpace(20));
  CHECK(sp.modes.size() == 20 * 21 / 2);
  // edge-filtered gap at a dimension large enough for clean interior modes
  double gap = chan::spectral_gap(p, TruncatedSpace(40));
  CHECK(gap == doctest::Approx(std::sinh(0.5 * beta)).epsilon(1e-10));
}

}  // TEST_SUITE
