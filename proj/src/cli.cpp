// cli.cpp — command-line driver
#include "focklsi/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "focklsi/channels.hpp"
#include "focklsi/cmoe.hpp"
#include "focklsi/fock.hpp"
#include "focklsi/lsi_ou.hpp"
#include "focklsi/meta_lsi.hpp"
#include "focklsi/rng.hpp"

namespace focklsi::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using fock::Matrix;
using fock::State;
using fock::TruncatedSpace;

struct Check {
  std::string name;
  std::string status;  // pass | fail | flagged
  json details;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Check make_check(const std::string& name, bool pass, json details,
                 bool flagged = false) {
  return {name, pass ? (flagged ? "flagged" : "pass") : "fail",
          std::move(details)};
}

Matrix random_hermitian(TruncatedSpace s, std::uint64_t seed, int support) {
  rng::CounterRng r(seed, 0x68657278ULL);
  Matrix g = Matrix::Zero(s.dim, s.dim);
  for (int j = 0; j < support; ++j)
    for (int i = 0; i < support; ++i) g(i, j) = r.cgauss();
  return 0.5 * (g + g.adjoint());
}

int first_dim(const RunConfig& cfg, int fallback) {
  return cfg.dims.empty() ? fallback : cfg.dims[0];
}

chan::SemigroupParams class_generator(const RunConfig& cfg) {
  if (cfg.channel_class == "attenuator")
    return chan::attenuator_generator(cfg.rate, cfg.beta);
  if (cfg.channel_class == "amplifier")
    return chan::amplifier_generator(cfg.rate, cfg.beta);
  if (cfg.channel_class == "additive")
    return chan::additive_generator(cfg.rate);
  if (cfg.channel_class == "ou") return chan::ou_generator(cfg.beta);
  throw std::invalid_argument("unknown channel class: " + cfg.channel_class);
}

// ---------------------------------------------------------------- suites

std::vector<Check> suite_meta(const RunConfig& cfg) {
  std::vector<Check> out;
  int dim = first_dim(cfg, 20);
  TruncatedSpace s(dim);
  double p = cfg.p, beta = cfg.beta;
  meta::UpsilonParams up = meta::ou_mapped_params(p, beta);

  {
    double x = 0.3;
    State tau = fock::thermal_state(fock::ThermalParam(x), s);
    double via_fock = meta::upsilon(tau, up);
    double closed = meta::upsilon_thermal(x, up);
    double diff = std::abs(via_fock - closed);
    out.push_back(make_check("thermal_closed_form", diff <= 1e-7,
                             {{"difference", diff}}));
  }
  if (p > 1.0) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    w[0] = 1.0;
    double v = meta::upsilon(fock::diagonal_state(w), up);
    double expect = up.phat() * up.nu0;
    double diff = std::abs(v - expect);
    out.push_back(
        make_check("vacuum_limit", diff <= 1e-10, {{"difference", diff}}));
  }
  {
    meta::EtaResult eta = meta::eta_th(up);
    double closed = meta::eta_th_ou_closed(p, beta);
    double diff = std::abs(eta.value - closed);
    double arg_diff = std::abs(eta.argmin_x - std::exp(-beta));
    out.push_back(make_check(
        "eta_consistency", diff <= 1e-8 && arg_diff <= 1e-5 && !eta.at_boundary,
        {{"value", eta.value},
         {"closed_form", closed},
         {"argmin_x", eta.argmin_x}}));
  }
  {
    double min_chain = 1e300, min_eta = 1e300;
    bool ok = true;
    for (int i = 0; i < cfg.samples; ++i) {
      State rho = fock::random_state(s, 1 + i % 5, cfg.seed + i);
      meta::MetaReport rep = meta::verify_meta_lsi(rho, up, 1e-8, 1e-6);
      min_chain = std::min(min_chain, rep.chain_margin);
      min_eta = std::min(min_eta, rep.eta_margin);
      ok = ok && rep.pass;
    }
    out.push_back(make_check("rearrangement_chain", ok,
                             {{"samples", cfg.samples},
                              {"min_chain_margin", min_chain},
                              {"min_eta_margin", min_eta}}));
  }
  return out;
}

std::vector<Check> suite_lsi(const RunConfig& cfg) {
  std::vector<Check> out;
  int dim = first_dim(cfg, 20);
  TruncatedSpace s(dim);
  double p = cfg.p, beta = cfg.beta;
  double ap = ou::alpha_p_closed(p, beta);

  {
    double step = std::abs(ou::alpha_p_closed(1.0 + 1e-7, beta) -
                           ou::alpha_p_closed(1.0, beta));
    out.push_back(
        make_check("alpha_continuity", step <= 1e-5, {{"jump", step}}));
  }
  if (p > 1.0) {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      State rho = fock::random_state(TruncatedSpace(12), 12, cfg.seed + 7 + i);
      double e1 = ou::dirichlet_form(rho, p, beta);
      double e2 = ou::dirichlet_form_abstract(rho, p, beta);
      worst = std::max(worst, std::abs(e1 - e2));
    }
    out.push_back(make_check("dirichlet_routes", worst <= 1e-9,
                             {{"max_difference", worst}}));
  }
  {
    double min_margin = 1e300;
    for (int i = 0; i < cfg.samples; ++i) {
      State rho = fock::random_state(s, 1 + i % 5, cfg.seed + 100 + i);
      min_margin = std::min(min_margin, ou::lsi_ratio(rho, p, beta) - ap);
    }
    out.push_back(make_check("ratio_bound", min_margin >= -1e-6,
                             {{"samples", cfg.samples},
                              {"min_margin", min_margin}}));
  }
  {
    double min_margin = 1e300;
    for (int i = 0; i < 200; ++i) {
      double y = 1e-4 + (1.0 - 2e-4) * double(i) / 199.0;
      min_margin = std::min(min_margin, ou::thermal_ratio(y, p, beta) - ap);
    }
    out.push_back(make_check("thermal_ratio_grid", min_margin >= -1e-12,
                             {{"min_margin", min_margin}}));
  }
  {
    double min_phi = 1e300, max_diag = 0.0;
    for (int i = 0; i < 60; ++i) {
      double x = 0.01 + 0.98 * double(i) / 59.0;
      max_diag = std::max(max_diag, std::abs(ou::phi(x, x, p)));
      for (int j = 0; j < 60; ++j) {
        double y = 0.01 + 0.98 * double(j) / 59.0;
        min_phi = std::min(min_phi, ou::phi(x, y, p));
      }
    }
    out.push_back(make_check("phi_nonnegative",
                             min_phi >= -1e-12 && max_diag <= 1e-12,
                             {{"min_phi", min_phi},
                              {"max_on_diagonal", max_diag}}));
  }
  {
    double worst = 0.0;
    const double h = 1e-5;
    for (int i = 0; i < 20; ++i) {
      double x = 0.15 + 0.7 * double(i) / 19.0;
      for (int j = 0; j < 20; ++j) {
        double y = 0.15 + 0.7 * double(j) / 19.0;
        double fd = (ou::phi(x + h, y, p) - ou::phi(x - h, y, p)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - ou::phi_dx(x, y, p)));
      }
    }
    out.push_back(
        make_check("phi_derivative", worst <= 1e-6, {{"max_error", worst}}));
  }
  return out;
}

std::vector<Check> suite_spectrum(const RunConfig& cfg) {
  std::vector<Check> out;
  int dim = first_dim(cfg, 40);
  TruncatedSpace s(dim);
  double beta = cfg.beta;

  {
    double worst = 0.0;
    for (int k = 1; k <= 5; ++k)
      worst = std::max(worst,
                       ou::eigen_check(k, fock::cplx(1.0, 0.0), beta, s));
    out.push_back(make_check("hermite_eigenfunctions", worst <= 1e-8,
                             {{"max_residual", worst}, {"dim", dim}}));
  }
  {
    double gap = chan::spectral_gap(chan::ou_generator(beta), s);
    double diff = std::abs(gap - std::sinh(0.5 * beta));
    out.push_back(make_check("spectral_gap", diff <= 1e-8,
                             {{"gap", gap}, {"difference", diff}}));
  }
  {
    int n = 24;
    TruncatedSpace sx(n);
    double min_margin = 1e300;
    bool ok = true;
    int count = std::min(cfg.samples, 20);
    for (int i = 0; i < count; ++i) {
      Matrix x = random_hermitian(sx, cfg.seed + 300 + i, n - 2);
      double m;
      ok = ou::spectral_block_check(x, beta, 1e-8, &m) && ok;
      min_margin = std::min(min_margin, m);
    }
    out.push_back(make_check("band_bounds", ok,
                             {{"samples", count},
                              {"min_margin", min_margin}}));
  }
  {
    TruncatedSpace s10(10);
    chan::SemigroupParams g = chan::ou_generator(beta);
    State rho = fock::random_state(s10, 4, cfg.seed + 400);
    Matrix dense = chan::lindbladian_superop(g, s10);
    Eigen::Map<const Eigen::VectorXcd> vec(rho.rho.data(), 100);
    Eigen::VectorXcd lv = dense * vec;
    Eigen::Map<const Eigen::MatrixXcd> lv_mat(lv.data(), 10, 10);
    double d1 = (lv_mat - chan::lindbladian_apply(g, rho.rho)).norm();
    chan::BandPropagator bp = chan::BandPropagator::build(g, s10);
    double d2 = (bp.apply_generator(rho.rho) -
                 chan::lindbladian_apply(g, rho.rho)).norm();
    out.push_back(make_check("superop_consistency", d1 <= 1e-12 && d2 <= 1e-12,
                             {{"dense_vs_apply", d1}, {"bands_vs_apply", d2}}));
  }
  return out;
}

std::vector<Check> suite_cmoe(const RunConfig& cfg) {
  std::vector<Check> out;
  int dim = first_dim(cfg, 30);
  TruncatedSpace s(dim);
  chan::SemigroupParams gen = class_generator(cfg);

  {
    double min_margin = 1e300;
    bool any_flag = false;
    for (int i = 0; i < std::min(cfg.samples, 20); ++i) {
      State rho = fock::random_state(s, 1 + i % 4, cfg.seed + 500 + i,
                                     dim / 2);
      cmoe::Trajectory tr = cmoe::cmoe_verify(rho, gen, cfg.t_max, cfg.steps);
      min_margin = std::min(min_margin, tr.min_margin);
      any_flag = any_flag || tr.any_flagged;
    }
    bool pass = any_flag || min_margin >= -1e-6;
    out.push_back(make_check("entropy_comparison", pass,
                             {{"class", cfg.channel_class},
                              {"min_margin", min_margin},
                              {"truncation_flagged", any_flag}},
                             any_flag));
  }
  {
    State tau = fock::thermal_state(fock::ThermalParam(0.3), s);
    cmoe::Trajectory tr = cmoe::cmoe_verify(tau, gen, cfg.t_max, cfg.steps);
    double worst = 0.0, worst_n = 0.0;
    for (const auto& pt : tr.points) {
      worst = std::max(worst, std::abs(pt.margin));
      worst_n = std::max(worst_n, std::abs(pt.nbar - pt.nbar_ode));
    }
    bool pass = tr.any_flagged || (worst <= 1e-7 && worst_n <= 1e-7);
    out.push_back(make_check("thermal_exactness", pass,
                             {{"max_entropy_gap", worst},
                              {"max_mean_photon_gap", worst_n},
                              {"truncation_flagged", tr.any_flagged}},
                             tr.any_flagged));
  }
  {
    double alpha = cmoe::g_fun(0.4, gen);
    cmoe::Theorem52Report rep = cmoe::theorem52_check(
        gen, alpha, std::min(cfg.samples, 30), std::min(dim, 20), 4,
        cfg.seed + 600);
    double arg_diff = std::abs(rep.x_star - 0.4);
    out.push_back(make_check("thermal_optimality",
                             rep.pass && arg_diff <= 1e-6,
                             {{"alpha", rep.alpha},
                              {"argmin", rep.x_star},
                              {"min_margin", rep.min_margin}}));
  }
  return out;
}

std::vector<Check> suite_generators(const RunConfig& cfg) {
  std::vector<Check> out;
  int dim = first_dim(cfg, 30);
  TruncatedSpace s(dim);
  double beta = cfg.beta, c = cfg.rate;

  {
    chan::SemigroupParams ou_g = chan::ou_generator(beta);
    chan::SemigroupParams att = chan::attenuator_generator(
        std::sinh(0.5 * beta), beta);
    chan::SemigroupParams amp = chan::amplifier_generator(c, beta);
    chan::SemigroupParams att_c = chan::attenuator_generator(c, beta);
    chan::SemigroupParams add = chan::additive_generator(c);
    double d1 = std::max(std::abs(ou_g.nu0 - att.nu0),
                         std::abs(ou_g.nu1 - att.nu1));
    double d2 = std::max(std::abs(amp.nu0 - att_c.nu1),
                         std::abs(amp.nu1 - att_c.nu0));
    bool ok = d1 <= 1e-13 && d2 <= 1e-13 && add.nu0 == add.nu1;
    out.push_back(make_check("rate_maps", ok, {{"ou_vs_attenuator", d1}}));
  }
  {
    bool ok = true;
    for (double t : {0.1, 1.0}) {
      ok = ok && chan::is_cp(chan::attenuator_params(t, c, beta));
      ok = ok && chan::is_cp(chan::amplifier_params(t, c, beta));
      ok = ok && chan::is_cp(chan::additive_params(t, c));
    }
    bool reject = !chan::is_cp({0.5, 0.2});
    out.push_back(make_check("cp_condition", ok && reject, {}));
  }
  {
    State rho = fock::random_state(s, 3, cfg.seed + 700);
    json ratios = json::array();
    bool ok = true;
    for (const auto& gen :
         {chan::attenuator_generator(c, beta), chan::amplifier_generator(c, beta),
          chan::additive_generator(c)}) {
      double r1 = chan::generator_fd_check(gen, rho, 1e-3);
      double r2 = chan::generator_fd_check(gen, rho, 5e-4);
      double ratio = r1 / r2;
      ratios.push_back(ratio);
      ok = ok && ratio >= 1.7 && ratio <= 2.3;
    }
    out.push_back(make_check("fd_convergence", ok, {{"ratios", ratios}}));
  }
  {
    chan::SemigroupParams gen = chan::attenuator_generator(c, beta);
    State rho = fock::random_state(s, 4, cfg.seed + 701);
    Matrix l = chan::lindbladian_apply(gen, rho.rho);
    double tr = std::abs(l.trace().real());
    double herm = (l - l.adjoint()).cwiseAbs().maxCoeff();
    State tau = fock::thermal_state(fock::ThermalParam(std::exp(-beta)), s);
    double fixed = chan::lindbladian_apply(gen, tau.rho).cwiseAbs().maxCoeff();
    out.push_back(make_check("generator_structure",
                             tr <= 1e-12 && herm <= 1e-12 && fixed <= 1e-12,
                             {{"trace_leak", tr},
                              {"hermiticity_defect", herm},
                              {"fixed_point_residual", fixed}}));
  }
  {
    TruncatedSpace s50(50);
    double y = 0.3, t = 0.5;
    State tau = fock::thermal_state(fock::ThermalParam(y), s50);
    chan::SemigroupParams gen = chan::attenuator_generator(c, beta);
    chan::EvolveResult ev = chan::evolve(tau, gen, t);
    chan::PhaseCovariantParams pc = chan::attenuator_params(t, c, beta);
    chan::GaussianStateParams g0{0.0, (1.0 + y) / (1.0 - y)};
    chan::GaussianStateParams g1 = chan::gaussian_channel_action(g0, pc);
    double predicted = 0.5 * (g1.c - 1.0);
    double diff = std::abs(fock::mean_photon(ev.state) - predicted);
    out.push_back(
        make_check("gaussian_closure", diff <= 1e-9, {{"difference", diff}}));
  }
  {
    TruncatedSpace s20(20);
    chan::SemigroupParams gen = chan::ou_generator(beta);
    State rho = fock::random_state(s20, 3, cfg.seed + 702);
    Matrix a = chan::BandPropagator::build(gen, s20).evolve(rho.rho, 0.7);
    Matrix b = chan::evolve_rk45(rho, gen, 0.7);
    double diff = (a - b).cwiseAbs().maxCoeff();
    out.push_back(
        make_check("rk_vs_expm", diff <= 1e-8, {{"difference", diff}}));
  }
  return out;
}

std::vector<Check> suite_multimode(const RunConfig& cfg) {
  std::vector<Check> out;
  int per = first_dim(cfg, 12);
  TruncatedSpace s(per);
  double beta = cfg.beta;
  meta::UpsilonParams up(std::exp(-0.5 * beta), std::exp(0.5 * beta), 0.7,
                         cfg.p > 1.0 ? cfg.p : 2.0);

  {
    double b2 = ou::multimode_alpha2_bound(2, beta);
    double b5 = ou::multimode_alpha2_bound(5, beta);
    double a2 = ou::alpha_p_closed(2.0, beta);
    out.push_back(make_check("alpha2_bound_sanity",
                             b2 > 0.0 && b2 < a2 && b5 < b2,
                             {{"bound_m2", b2}, {"alpha_2", a2}}));
  }
  {
    Eigen::VectorXd w1 = Eigen::VectorXd::Zero(per);
    Eigen::VectorXd w2 = Eigen::VectorXd::Zero(per);
    rng::CounterRng r(cfg.seed + 800, 0);
    for (int i = 0; i < 5; ++i) {
      w1[i] = r.uniform();
      w2[i] = r.uniform();
    }
    State r1 = fock::diagonal_state(w1);
    State r2 = fock::diagonal_state(w2);
    State prod{fock::tensor(r1.rho, r2.rho), 0.0};
    double lhs = meta::upsilon_multimode(prod, up, 2, s);
    double rhs = 0.5 * (meta::upsilon(r1, up) + meta::upsilon(r2, up));
    double diff = std::abs(lhs - rhs);
    out.push_back(
        make_check("product_additivity", diff <= 1e-9, {{"difference", diff}}));
  }
  {
    Eigen::VectorXd w1 = Eigen::VectorXd::Zero(per);
    Eigen::VectorXd w2 = Eigen::VectorXd::Zero(per);
    rng::CounterRng r(cfg.seed + 801, 0);
    for (int i = 0; i < 5; ++i) {
      w1[i] = r.uniform();
      w2[i] = r.uniform();
    }
    State prod{fock::tensor(fock::diagonal_state(w1).rho,
                            fock::diagonal_state(w2).rho),
               0.0};
    meta::Lemma31Report rep = meta::lemma31_checks(
        prod, up, s, fock::cplx(0.3, 0.1), 0.7, 0.1);
    bool ok = std::abs(rep.passive_delta) <= 1e-7 &&
              std::abs(rep.displacement_delta - rep.displacement_predicted) <=
                  1e-6 &&
              rep.squeezer_delta >= -1e-7 &&
              rep.max_unitarity_defect <= 1e-12;
    out.push_back(make_check("unitary_behavior", ok,
                             {{"passive_delta", rep.passive_delta},
                              {"displacement_delta", rep.displacement_delta},
                              {"displacement_predicted",
                               rep.displacement_predicted},
                              {"squeezer_delta", rep.squeezer_delta},
                              {"unitarity_defect",
                               rep.max_unitarity_defect}}));
  }
  {
    int n = std::max(per, 10);
    TruncatedSpace sx(n);
    State sigma = fock::thermal_state(fock::ThermalParam(std::exp(-beta)), sx);
    double c_exp = std::log(3.0);
    auto uniform = [](int) { return 1.0; };
    auto expw = [c_exp](int l) { return std::exp(-0.5 * c_exp * std::abs(l)); };
    double min_margin = 1e300;
    bool ok = true;
    for (int i = 0; i < std::min(cfg.samples, 10); ++i) {
      Matrix h = random_hermitian(sx, cfg.seed + 900 + i, n);
      Matrix x = h * h;
      x /= x.trace().real();
      for (const auto& w :
           std::vector<std::function<double(int)>>{uniform, expw}) {
        ou::Lemma45Report rep = ou::lemma45_check(x, sigma, w, 1e-8);
        min_margin = std::min(min_margin, rep.margin);
        ok = ok && rep.pass;
      }
    }
    out.push_back(make_check("entropy_decomposition", ok,
                             {{"min_margin", min_margin}}));
  }
  return out;
}

// ---------------------------------------------------------------- sweeps

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (!std::isfinite(row[i]))
        throw std::runtime_error("non-finite value in " + path.string());
      f << (i ? "," : "") << fmt_double(row[i]);
    }
    f << "\n";
  }
}

std::vector<Check> sweep_eta(const RunConfig&, const fs::path& dir,
                             std::vector<std::string>& files) {
  std::vector<std::vector<double>> rows;
  for (double p : {1.0, 1.25, 1.5, 2.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      meta::EtaResult eta = meta::eta_th(meta::ou_mapped_params(p, beta));
      rows.push_back({p, beta, eta.value, eta.argmin_x,
                      eta.at_boundary ? 1.0 : 0.0});
    }
  }
  write_csv(dir / "eta.csv", "p,beta,eta,argmin_x,at_boundary", rows);
  files.push_back("eta.csv");
  return {make_check("eta_sweep", true, {{"rows", rows.size()}})};
}

std::vector<Check> sweep_thermal_ratio(const RunConfig& cfg,
                                       const fs::path& dir,
                                       std::vector<std::string>& files) {
  double ap = ou::alpha_p_closed(cfg.p, cfg.beta);
  std::vector<std::vector<double>> rows;
  double min_margin = 1e300;
  for (int i = 0; i < cfg.points; ++i) {
    double y = 1e-4 + (1.0 - 2e-4) * double(i) / double(cfg.points - 1);
    double ratio = ou::thermal_ratio(y, cfg.p, cfg.beta);
    min_margin = std::min(min_margin, ratio - ap);
    rows.push_back({y, ratio, ap, ratio - ap});
  }
  write_csv(dir / "thermal_ratio.csv", "y,ratio,alpha_p,margin", rows);
  files.push_back("thermal_ratio.csv");
  return {make_check("thermal_ratio_sweep", min_margin >= -1e-12,
                     {{"rows", rows.size()}, {"min_margin", min_margin}})};
}

std::vector<Check> sweep_phi(const RunConfig& cfg, const fs::path& dir,
                             std::vector<std::string>& files) {
  int n = std::min(cfg.points, 200);
  std::vector<std::vector<double>> rows;
  double min_phi = 1e300;
  for (int i = 0; i < n; ++i) {
    double x = 0.01 + 0.98 * double(i) / double(n - 1);
    for (int j = 0; j < n; ++j) {
      double y = 0.01 + 0.98 * double(j) / double(n - 1);
      double v = ou::phi(x, y, cfg.p);
      min_phi = std::min(min_phi, v);
      rows.push_back({x, y, v, ou::phi_dx(x, y, cfg.p)});
    }
  }
  write_csv(dir / "phi.csv", "x,y,phi,phi_dx", rows);
  files.push_back("phi.csv");
  return {make_check("phi_sweep", min_phi >= -1e-12,
                     {{"rows", rows.size()}, {"min_phi", min_phi}})};
}

std::vector<Check> sweep_trajectory(const RunConfig& cfg, const fs::path& dir,
                                    std::vector<std::string>& files) {
  int dim = first_dim(cfg, 30);
  TruncatedSpace s(dim);
  State rho = fock::random_state(s, 3, cfg.seed, dim / 2);
  cmoe::Trajectory tr =
      cmoe::cmoe_verify(rho, class_generator(cfg), cfg.t_max, cfg.steps);
  std::vector<std::vector<double>> rows;
  for (const auto& pt : tr.points)
    rows.push_back({pt.t, pt.s_rho, pt.s_tau, pt.margin, pt.tail, pt.nbar,
                    pt.nbar_ode, pt.flagged ? 1.0 : 0.0});
  write_csv(dir / "trajectory.csv",
            "t,entropy,thermal_entropy,margin,tail,nbar,nbar_ode,flagged",
            rows);
  files.push_back("trajectory.csv");
  bool pass = tr.any_flagged || tr.min_margin >= -1e-6;
  return {make_check("trajectory_sweep", pass,
                     {{"class", cfg.channel_class},
                      {"min_margin", tr.min_margin},
                      {"truncation_flagged", tr.any_flagged}},
                     tr.any_flagged)};
}

std::vector<Check> cmd_alpha(const RunConfig& cfg, const fs::path& dir,
                             std::vector<std::string>& files) {
  std::vector<std::vector<double>> rows;
  for (double p : {1.0, 1.25, 1.5, 2.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      rows.push_back({p, beta, ou::alpha_p_closed(p, beta), double(cfg.m),
                      ou::multimode_alpha2_bound(cfg.m, beta)});
    }
  }
  write_csv(dir / "alpha.csv", "p,beta,alpha_p,m,alpha2_multimode_bound",
            rows);
  files.push_back("alpha.csv");
  return {make_check("alpha_table", true, {{"rows", rows.size()}})};
}

// ---------------------------------------------------------------- driver

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto strip = [](std::string v) {
      size_t a = v.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = v.find_last_not_of(" \t\r");
      return v.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv,
                  RunConfig& cfg) {
  for (const auto& [key, val] : kv) {
    try {
      if (key == "p") cfg.p = std::stod(val);
      else if (key == "beta") cfg.beta = std::stod(val);
      else if (key == "samples") cfg.samples = std::stoi(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "t-max" || key == "t_max") cfg.t_max = std::stod(val);
      else if (key == "steps") cfg.steps = std::stoi(val);
      else if (key == "rate") cfg.rate = std::stod(val);
      else if (key == "class") cfg.channel_class = val;
      else if (key == "out") cfg.out_dir = val;
      else if (key == "format") cfg.format = val;
      else if (key == "points") cfg.points = std::stoi(val);
      else if (key == "m") cfg.m = std::stoi(val);
      else if (key == "dim") {
        cfg.dims.clear();
        std::stringstream ss(val);
        std::string tok;
        while (std::getline(ss, tok, ','))
          cfg.dims.push_back(std::stoi(tok));
      } else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad config value for " + key + ": " + val);
    }
  }
}

json config_echo(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"target", cfg.target},
          {"p", cfg.p},
          {"beta", cfg.beta},
          {"dims", cfg.dims},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"t_max", cfg.t_max},
          {"steps", cfg.steps},
          {"rate", cfg.rate},
          {"class", cfg.channel_class},
          {"points", cfg.points},
          {"m", cfg.m},
          {"format", cfg.format}};
}

int finalize(const RunConfig& cfg, const std::vector<Check>& checks,
             const std::vector<std::string>& files,
             std::chrono::steady_clock::time_point t0) {
  int passed = 0, failed = 0, flagged = 0;
  for (const auto& c : checks) {
    if (c.status == "fail") ++failed;
    else if (c.status == "flagged") ++flagged;
    else ++passed;
  }
  int code = failed > 0 ? exit_fail
                        : (flagged > 0 ? exit_inconclusive : exit_pass);
  if (cfg.format != "csv") {
    json rep = {{"schema_version", "1"},
                {"config", config_echo(cfg)},
                {"checks", json::array()},
                {"summary",
                 {{"passed", passed}, {"failed", failed},
                  {"flagged", flagged}}},
                {"exit_code", code},
                {"files", files}};
    for (const auto& c : checks)
      rep["checks"].push_back(
          {{"name", c.name}, {"status", c.status}, {"details", c.details}});
    std::ofstream f(fs::path(cfg.out_dir) / "report.json");
    f << rep.dump(2) << "\n";
  }
  for (const auto& c : checks)
    std::printf("[%s] %s %s\n", c.status.c_str(), c.name.c_str(),
                c.details.dump().c_str());
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::printf("summary: passed=%d failed=%d flagged=%d\n", passed, failed,
              flagged);
  std::printf("wall_ms: %lld\n", static_cast<long long>(ms));
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;

  CLI::App app{"truncated Fock-space verification toolkit"};
  app.require_subcommand(1);
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Lebesgue index in [1,2]");
    sub->add_option("--beta", cfg.beta, "inverse temperature");
    sub->add_option("--dim", cfg.dims, "truncation dimension (1 or 2 values)")
        ->expected(1, 2);
    sub->add_option("--samples", cfg.samples, "random states per check");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--t-max", cfg.t_max, "evolution horizon");
    sub->add_option("--steps", cfg.steps, "trajectory steps");
    sub->add_option("--rate", cfg.rate, "channel rate constant");
    sub->add_option("--class", cfg.channel_class, "channel class")
        ->check(CLI::IsMember(
            {"attenuator", "amplifier", "additive", "ou"}));
    sub->add_option("--points", cfg.points, "sweep grid size");
    sub->add_option("--m", cfg.m, "mode count for multimode bounds");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    sub->add_option("--config", config_path, "flat key=value config file");
  };

  CLI::App* alpha = app.add_subcommand("alpha", "constant tables");
  CLI::App* verify = app.add_subcommand("verify", "verification suites");
  CLI::App* sweep = app.add_subcommand("sweep", "grid and trajectory output");
  add_common(alpha);
  add_common(verify);
  add_common(sweep);
  std::string suite, kind;
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"meta", "lsi", "spectrum", "cmoe", "generators",
                             "multimode", "all"}));
  sweep->add_option("kind", kind, "sweep kind")
      ->required()
      ->check(CLI::IsMember({"eta", "thermal-ratio", "phi", "trajectory"}));

  try {
    // apply config-file values first so explicit flags keep the last word
    for (size_t i = 0; i + 1 < args.size(); ++i)
      if (args[i] == "--config") apply_config(read_config_file(args[i + 1]), cfg);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "%s\n", e.what());
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  }

  if (cfg.out_dir.empty()) {
    const char* env = std::getenv("FOCKLSI_OUT_DIR");
    cfg.out_dir = env && *env ? env : "out";
  }

  try {
    fs::create_directories(cfg.out_dir);
    std::vector<Check> checks;
    std::vector<std::string> files;
    fs::path dir(cfg.out_dir);
    if (alpha->parsed()) {
      cfg.command = "alpha";
      cfg.target = "";
      checks = cmd_alpha(cfg, dir, files);
    } else if (verify->parsed()) {
      cfg.command = "verify";
      cfg.target = suite;
      auto run_suite = [&](const std::string& name) {
        std::vector<Check> got;
        if (name == "meta") got = suite_meta(cfg);
        else if (name == "lsi") got = suite_lsi(cfg);
        else if (name == "spectrum") got = suite_spectrum(cfg);
        else if (name == "cmoe") got = suite_cmoe(cfg);
        else if (name == "generators") got = suite_generators(cfg);
        else got = suite_multimode(cfg);
        for (auto& c : got) {
          c.name = name + "/" + c.name;
          checks.push_back(std::move(c));
        }
      };
      if (suite == "all") {
        for (const char* name :
             {"meta", "lsi", "spectrum", "cmoe", "generators", "multimode"})
          run_suite(name);
      } else {
        run_suite(suite);
      }
    } else {
      cfg.command = "sweep";
      cfg.target = kind;
      if (kind == "eta") checks = sweep_eta(cfg, dir, files);
      else if (kind == "thermal-ratio")
        checks = sweep_thermal_ratio(cfg, dir, files);
      else if (kind == "phi") checks = sweep_phi(cfg, dir, files);
      else checks = sweep_trajectory(cfg, dir, files);
    }
    return finalize(cfg, checks, files, t0);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_fail;
  }
}

}  // namespace focklsi::cli
