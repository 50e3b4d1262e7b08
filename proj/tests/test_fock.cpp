// test_fock.cpp — truncated-space primitives: ladder operators, states,
// spectral functionals, and Gaussian unitaries
#include <cmath>
#include <complex>

#include "doctest.h"
#include "focklsi/fock.hpp"

using namespace focklsi;
using fock::Matrix;
using fock::State;
using fock::TruncatedSpace;
using fock::cplx;

TEST_SUITE("fock") {

TEST_CASE("ladder operators have square-root matrix elements") {
  TruncatedSpace s(8);
  Matrix a = fock::annihilation(s);
  Matrix ad = fock::creation(s);
  for (int n = 1; n < 8; ++n) {
    CHECK(std::abs(a(n - 1, n) - std::sqrt(double(n))) < 1e-15);
  }
  CHECK((ad - a.adjoint()).norm() == 0.0);
  // a a^dag loses the top corner under truncation: diag(1..n-1, 0)
  Matrix aad = a * ad;
  CHECK(std::abs(aad(7, 7)) == 0.0);
  CHECK(std::abs(aad(3, 3) - 4.0) < 1e-14);
  Matrix n_op = fock::number_op(s);
  CHECK((n_op - ad * a).norm() < 1e-14);
  for (int n = 0; n < 8; ++n) CHECK(n_op(n, n) == cplx(double(n), 0.0));
}

TEST_CASE("space and parameter validation") {
  CHECK_THROWS_AS(TruncatedSpace(1), std::invalid_argument);
  CHECK_THROWS_AS(fock::ThermalParam(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(fock::ThermalParam(1.0), std::invalid_argument);
}

TEST_CASE("thermal state is the exact geometric diagonal with recorded tail") {
  double x = 0.4;
  TruncatedSpace s(30);
  State tau = fock::thermal_state(fock::ThermalParam(x), s);
  for (int n = 0; n < 30; ++n) {
    CHECK(std::abs(tau.rho(n, n).real() - (1.0 - x) * std::pow(x, n)) <
          1e-15);
  }
  CHECK(std::abs(tau.rho.trace().real() - (1.0 - std::pow(x, 30))) < 1e-15);
  CHECK(tau.tail_mass == doctest::Approx(std::pow(x, 30)).epsilon(1e-12));
  CHECK(fock::is_valid_state(tau));
}

TEST_CASE("thermal entropy and mean photon number match closed forms") {
  // occupation 1/2: the infinite-dimensional entropy is exactly 2 log 2
  TruncatedSpace s(60);
  State tau = fock::thermal_state(fock::ThermalParam(0.5), s);
  CHECK(fock::von_neumann_entropy(tau) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
  State tau3 = fock::thermal_state(fock::ThermalParam(0.3), s);
  CHECK(fock::mean_photon(tau3) ==
        doctest::Approx(0.3 / 0.7).epsilon(1e-12));
}

TEST_CASE("random states are deterministic, normalized, and rank-controlled") {
  TruncatedSpace s(14);
  State r1 = fock::random_state(s, 3, 42);
  State r2 = fock::random_state(s, 3, 42);
  State r3 = fock::random_state(s, 3, 43);
  CHECK((r1.rho - r2.rho).norm() == 0.0);
  CHECK((r1.rho - r3.rho).norm() > 1e-3);
  CHECK(std::abs(r1.rho.trace().real() - 1.0) < 1e-13);
  CHECK((r1.rho - r1.rho.adjoint()).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> es(r1.rho);
  int positive = 0;
  for (int i = 0; i < 14; ++i) {
    CHECK(es.eigenvalues()[i] > -1e-14);
    if (es.eigenvalues()[i] > 1e-12) ++positive;
  }
  CHECK(positive == 3);
  double defect = 1.0;
  CHECK(fock::is_valid_state(r1, &defect));
  CHECK(defect < 1e-12);

  State sup = fock::random_state(s, 2, 7, 5);
  for (int i = 5; i < 14; ++i)
    for (int j = 0; j < 14; ++j) {
      CHECK(sup.rho(i, j) == cplx(0.0, 0.0));
      CHECK(sup.rho(j, i) == cplx(0.0, 0.0));
    }
}

TEST_CASE("diagonal states normalize and reject bad weights") {
  Eigen::VectorXd w(4);
  w << 2.0, 1.0, 1.0, 0.0;
  State st = fock::diagonal_state(w);
  CHECK(st.rho(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(st.rho.trace().real() - 1.0) < 1e-15);
  w[2] = -1.0;
  CHECK_THROWS_AS(fock::diagonal_state(w), std::invalid_argument);
}

TEST_CASE("matrix power and log invert each other on full-rank states") {
  TruncatedSpace s(10);
  State rho = fock::random_state(s, 10, 5);
  Matrix half = fock::matrix_power(rho.rho, 0.5);
  CHECK((half * half - rho.rho).norm() < 1e-12);
  Matrix third = fock::matrix_power(rho.rho, 1.0 / 3.0);
  CHECK((third * third * third - rho.rho).norm() < 1e-12);
  State tau = fock::thermal_state(fock::ThermalParam(0.3), s);
  Matrix lg = fock::matrix_log(tau.rho);
  for (int n = 0; n < 10; ++n)
    CHECK(lg(n, n).real() ==
          doctest::Approx(std::log(0.7) + n * std::log(0.3)).epsilon(1e-12));
}

TEST_CASE("trace norm sums absolute eigenvalues") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = -1.5;
  m(2, 2) = 0.25;
  CHECK(fock::trace_norm(m) == doctest::Approx(3.75).epsilon(1e-14));
}

TEST_CASE("relative entropy between thermals matches the closed form") {
  TruncatedSpace s(60);
  double y = 0.3, x = std::exp(-1.0);
  State ty = fock::thermal_state(fock::ThermalParam(y), s);
  State tx = fock::thermal_state(fock::ThermalParam(x), s);
  double closed = std::log((1.0 - y) / (1.0 - x)) +
                  y / (1.0 - y) * (std::log(y) - std::log(x));
  CHECK(fock::relative_entropy(ty, tx) ==
        doctest::Approx(closed).epsilon(1e-11));
  CHECK(fock::relative_entropy_vs_thermal(ty, fock::ThermalParam(x)) ==
        doctest::Approx(closed).epsilon(1e-11));
  CHECK(fock::relative_entropy(ty, ty) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("relative entropy diverges outside the support of sigma") {
  TruncatedSpace s(6);
  Matrix p0 = Matrix::Zero(6, 6);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(6, 6);
  p1(1, 1) = 1.0;
  CHECK(std::isinf(fock::relative_entropy({p1, 0.0}, {p0, 0.0})));
}

TEST_CASE("regularization keeps the trace and makes the state full rank") {
  TruncatedSpace s(12);
  State rho = fock::random_state(s, 1, 9);
  State reg = fock::regularize_full_rank(rho);
  CHECK(std::abs(reg.rho.trace().real() - rho.rho.trace().real()) < 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> es(reg.rho);
  CHECK(es.eigenvalues().minCoeff() > 1e-14);
}

TEST_CASE("displacement operators are unitary with Gaussian vacuum overlap") {
  TruncatedSpace s(40);
  cplx xi(0.3, 0.2);
  Matrix d = fock::displacement(xi, s);
  CHECK((d * d.adjoint() - Matrix::Identity(40, 40)).norm() < 1e-12);
  CHECK(std::abs(d(0, 0) - std::exp(-0.5 * std::norm(xi))) < 1e-12);
  // characteristic function of the vacuum
  Eigen::VectorXd w = Eigen::VectorXd::Zero(40);
  w[0] = 1.0;
  State vac = fock::diagonal_state(w);
  CHECK(std::abs(fock::characteristic_function(vac, xi) -
                 std::exp(-0.5 * std::norm(xi))) < 1e-12);
}

TEST_CASE("squeezers are unitary and mix the ladder pair hyperbolically") {
  TruncatedSpace s(30);
  double r = 0.2;
  Matrix u = fock::squeezer(r, s);
  CHECK((u * u.adjoint() - Matrix::Identity(30, 30)).norm() < 1e-12);
  Matrix a = fock::annihilation(s);
  Matrix conj = u.adjoint() * a * u;
  Matrix expect = std::cosh(r) * a - std::sinh(r) * a.adjoint();
  // squeezing spreads truncation distortion; the identity is clean only on a
  // block well inside the cutoff
  CHECK((conj - expect).topLeftCorner(10, 10).norm() < 1e-8);
}

TEST_CASE("beam splitters are unitary and conserve total photon number") {
  TruncatedSpace per(6);
  double theta = 0.7;
  Matrix u = fock::beam_splitter(theta, per);
  Matrix id = Matrix::Identity(36, 36);
  CHECK((u * u.adjoint() - id).norm() < 1e-12);
  Matrix n1 = fock::embed(fock::number_op(per), 0, 2, per);
  Matrix n2 = fock::embed(fock::number_op(per), 1, 2, per);
  Matrix n_tot = n1 + n2;
  CHECK((u * n_tot - n_tot * u).norm() < 1e-12);
  // single-photon sector rotates by theta; |1,0> is index 6, |0,1> index 1
  CHECK(std::abs(u(6, 6).real() - std::cos(theta)) < 1e-12);
  CHECK(std::abs(std::abs(u(1, 6)) - std::abs(std::sin(theta))) < 1e-12);
}

TEST_CASE("tensor products and embeddings compose as expected") {
  TruncatedSpace s(4);
  State t1 = fock::thermal_state(fock::ThermalParam(0.2), s);
  State t2 = fock::thermal_state(fock::ThermalParam(0.5), s);
  Matrix prod = fock::tensor(t1.rho, t2.rho);
  CHECK(prod.rows() == 16);
  CHECK(std::abs(prod.trace() -
                 t1.rho.trace() * t2.rho.trace()) < 1e-14);
  Matrix n0 = fock::embed(fock::number_op(s), 0, 2, s);
  Matrix direct =
      fock::tensor(fock::number_op(s), Matrix::Identity(4, 4));
  CHECK((n0 - direct).norm() == 0.0);
}

TEST_CASE("validity check flags non-states") {
  Matrix bad = Matrix::Zero(4, 4);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK(!fock::is_valid_state({bad, 0.0}));
}

}  // TEST_SUITE
