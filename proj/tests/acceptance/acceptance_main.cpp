// End-to-end acceptance checks.  Each criterion prints exactly one
// [PASS]/[FAIL] line with a short measurement summary and its runtime; the
// process exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "jcq/bath_kernel.hpp"
#include "jcq/constants.hpp"
#include "jcq/dynamics.hpp"
#include "jcq/noise.hpp"
#include "jcq/scenario.hpp"
#include "jcq/units.hpp"

using namespace jcq;
namespace sc = jcq::scenario;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const double kE1GHz = units::freq_to_energy(1e9);
const double kE50GHz = units::freq_to_energy(50e9);
const double kE1kHz = units::freq_to_energy(1e3);

double derived_kappa() {
  return units::kappa_from_charging(units::charging_energy(1e-18, 1e-16))
      .kappa_ueV2;
}

noise::NoiseModel ohmic_model() {
  return noise::NoiseModel::make_ohmic({1e-6, kE50GHz}, {kE1GHz, kE50GHz});
}

noise::NoiseModel oneoverf_model(double alpha = 1e-7) {
  return noise::NoiseModel::make_oneoverf({derived_kappa(), alpha},
                                          {kE1kHz, kE1GHz});
}

noise::NoiseModel composite_model() {
  return noise::NoiseModel::make_composite({1e-6, kE50GHz}, {kE1GHz, kE50GHz},
                                           {derived_kappa(), 1e-7},
                                           {kE1kHz, kE1GHz});
}

double quad_b2(const noise::NoiseModel& m, double T, double t) {
  kernel::KernelRequest req;
  req.model = m;
  req.T_K = T;
  req.t = t;
  return kernel::b_squared(req);
}

// ---- 1: adaptive quadrature against the discrete-mode oracle -------------

Outcome criterion_oracle() {
  struct Combo {
    const char* name;
    noise::NoiseModel model;
    double T;
  };
  const Combo combos[] = {
      {"ohmic/30mK", ohmic_model(), 0.03},
      {"ohmic/187.5mK", ohmic_model(), 0.1875},
      {"oneoverf/30mK", oneoverf_model(), 0.03},
      {"composite/30mK", composite_model(), 0.03},
      {"composite/150mK", composite_model(), 0.15},
  };
  const double ts[] = {0.005, 0.02, 0.1};

  double worst = 0.0;
  int n_checked = 0;
  for (const Combo& c : combos) {
    for (double t : ts) {
      const double quad = quad_b2(c.model, c.T, t);
      // double the mode count until the discrete sum settles
      int n = 1024;
      double prev = kernel::b_squared_discrete(c.model, c.T, t, n);
      double cur = prev;
      while (n < (1 << 21)) {
        n *= 2;
        cur = kernel::b_squared_discrete(c.model, c.T, t, n);
        if (std::abs(cur - prev) <= 1e-7 * std::abs(cur)) break;
        prev = cur;
      }
      worst = std::max(worst, rel_diff(quad, cur));
      ++n_checked;
    }
  }
  Outcome o;
  o.pass = worst <= 1e-6 && n_checked == 15;
  o.detail = "max rel diff " + sci(worst) + " over 15 combos";
  return o;
}

// ---- 2: 1/f small-angle closed form --------------------------------------

Outcome criterion_small_angle() {
  const double kappa = derived_kappa();
  const double alpha = 1e-7;
  const double log_ratio = std::log(kE1GHz / kE1kHz);
  double worst = 0.0;
  for (double t : {0.005, 0.01, 0.02}) {
    const double exact = quad_b2(oneoverf_model(alpha), 0.03, t);
    const double approx = 2.0 * kappa * alpha * t * t * log_ratio;
    worst = std::max(worst, rel_diff(exact, approx));
  }
  Outcome o;
  o.pass = worst <= 5e-3;
  o.detail = "max rel dev " + sci(worst) + " from 2 k a t^2 ln(Ehi/Elo)";
  return o;
}

// ---- 3: temperature cancellation for 1/f ---------------------------------

Outcome criterion_t_cancellation() {
  double worst = 0.0;
  for (double t : {0.005, 0.02, 0.1}) {
    const double cold = quad_b2(oneoverf_model(), 0.03, t);
    const double hot = quad_b2(oneoverf_model(), 0.1875, t);
    worst = std::max(worst, rel_diff(cold, hot));
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = "max rel diff " + sci(worst) + " between 30 mK and 187.5 mK";
  return o;
}

// ---- 4: dynamics identities on random states -----------------------------

Outcome criterion_dynamics() {
  std::mt19937_64 rng(20260823ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // 20 (t, B^2) pairs spanning the regime of interest
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 20; ++i) {
    const double f = static_cast<double>(i) / 19.0;
    pairs.emplace_back(1e-3 * std::pow(100.0, f), 1e-8 * std::pow(1e8, f));
  }

  double worst = 0.0;
  const int n_states = 10000;
  for (int s = 0; s < n_states; ++s) {
    // uniform over the Bloch ball by rejection
    double x, y, z;
    do {
      x = u(rng);
      y = u(rng);
      z = u(rng);
    } while (x * x + y * y + z * z > 1.0);
    const dynamics::QubitState rho0 = dynamics::from_bloch(x, y, z);

    for (const auto& pr : pairs) {
      const double t = pr.first;
      const dynamics::DynamicsParams p{51.8, pr.second};

      const dynamics::QubitState rho = dynamics::evolve(rho0, t, p);
      const dynamics::QubitState ideal =
          dynamics::ideal_evolve(rho0, t, p.E_J_ueV);
      const dynamics::Deviation sig = dynamics::deviation(rho0, t, p);

      worst = std::max(worst, std::abs(rho.rho00 + rho.rho11 - 1.0));
      worst = std::max(worst, std::max(-rho.rho00, -rho.rho11));
      worst = std::max(worst,
                       std::norm(rho.rho10) - rho.rho00 * rho.rho11);
      worst = std::max(worst,
                       std::abs(sig.sigma11 - (rho.rho11 - ideal.rho11)));
      worst =
          std::max(worst, std::abs(sig.sigma10 - (rho.rho10 - ideal.rho10)));
      const double n1 = dynamics::norm_lambda(sig);
      const double n2 = dynamics::norm_closed_form(rho0, t, p);
      worst = std::max(worst, std::abs(n1 - n2));
      worst = std::max(worst, n1 - dynamics::decoherence_D(p));
    }
  }

  // the sup is attained by diagonal pure states
  for (const auto& pr : pairs) {
    const dynamics::DynamicsParams p{51.8, pr.second};
    const double d = dynamics::decoherence_D(p);
    worst = std::max(
        worst, std::abs(dynamics::norm_closed_form({1.0, 0.0, {0.0, 0.0}},
                                                   pr.first, p) -
                        d));
    worst = std::max(
        worst, std::abs(dynamics::norm_closed_form({0.0, 1.0, {0.0, 0.0}},
                                                   pr.first, p) -
                        d));
  }

  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = "max identity violation " + sci(worst) + " over 10^4 x 20 cases";
  return o;
}

// ---- 5: physical constants -----------------------------------------------

Outcome criterion_constants() {
  const double kappa_si =
      units::kappa_from_charging(units::charging_energy(1e-18, 1e-16))
          .kappa_SI_per_s2;
  const bool kappa_ok = kappa_si >= 1.4e25 && kappa_si <= 1.6e25;
  const bool rq_ok = std::abs(constants::R_Q_ohm - 6453.2) <= 0.1;
  const double tau = units::t_to_tau_ps(0.0193);
  const bool tau_ok = std::abs(tau - 12.7) <= 0.1;

  Outcome o;
  o.pass = kappa_ok && rq_ok && tau_ok;
  o.detail = "kappa_SI " + sci(kappa_si) + " /s^2, R_Q " +
             sci(constants::R_Q_ohm) + " ohm, tau(0.0193) " + sci(tau) + " ps";
  return o;
}

// ---- 6: Ohmic family claims ----------------------------------------------

Outcome criterion_ohmic_family() {
  sc::ScenarioConfig cfg = sc::figure_defaults(sc::Figure::fig1);
  cfg.t_grid = {0.0, 0.1, 201};
  const sc::FigureResult fr = sc::run_figure(sc::Figure::fig1, cfg);
  if (fr.curves.size() != 3) return {false, "expected 3 curves"};

  const auto& cold = fr.curves[0].sweep.rows;     // 30 mK
  const auto& warm = fr.curves[1].sweep.rows;     // 150 mK
  const auto& hot = fr.curves[2].sweep.rows;      // 187.5 mK

  bool ordered = true;
  double max_d_cold = 0.0, max_d_hot_short = 0.0;
  for (std::size_t i = 0; i < cold.size(); ++i) {
    if (cold[i].t > 0.0) {
      ordered = ordered && cold[i].b2_total < warm[i].b2_total &&
                warm[i].b2_total < hot[i].b2_total;
    }
    max_d_cold = std::max(max_d_cold, cold[i].D);
    if (hot[i].t <= 0.02 + 1e-12)
      max_d_hot_short = std::max(max_d_hot_short, hot[i].D);
  }
  const bool cold_ok = max_d_cold < 1e-4;
  const bool hot_ok = max_d_hot_short < 1e-4;

  Outcome o;
  o.pass = ordered && cold_ok && hot_ok;
  o.detail = std::string("T-ordering ") + (ordered ? "ok" : "VIOLATED") +
             ", max D(30mK, t<=0.1) " + sci(max_d_cold) +
             ", max D(187.5mK, t<=0.02) " + sci(max_d_hot_short);
  return o;
}

// ---- 7: 1/f and composite families ---------------------------------------

Outcome criterion_families() {
  bool mono = true;
  for (sc::Figure which : {sc::Figure::fig2, sc::Figure::fig3}) {
    const sc::ScenarioConfig cfg = sc::figure_defaults(which);
    const sc::FigureResult fr = sc::run_figure(which, cfg);
    for (std::size_t c = 1; c < fr.curves.size(); ++c) {
      const auto& lo = fr.curves[c - 1].sweep.rows;
      const auto& hi = fr.curves[c].sweep.rows;
      for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i].t == 0.0) continue;
        mono = mono && hi[i].D > lo[i].D;
      }
    }
  }

  // composite column equals the sum of single-source runs
  sc::ScenarioConfig comp = sc::figure_defaults(sc::Figure::fig3);
  comp.alpha_f_values = {4e-8};
  sc::ScenarioConfig oh = comp;
  oh.sources = sc::SourceSet::ohmic_only;
  sc::ScenarioConfig fo = comp;
  fo.sources = sc::SourceSet::oneoverf_only;

  const auto rc = sc::run_sweep(comp);
  const auto ro = sc::run_sweep(oh);
  const auto rf = sc::run_sweep(fo);
  double worst = 0.0;
  for (std::size_t i = 0; i < rc.rows.size(); ++i) {
    if (rc.rows[i].t == 0.0) continue;
    worst = std::max(worst, rel_diff(rc.rows[i].b2_total,
                                     ro.rows[i].b2_total +
                                         rf.rows[i].b2_total));
  }

  Outcome o;
  o.pass = mono && worst <= 1e-9;
  o.detail = std::string("alpha_f ordering ") + (mono ? "ok" : "VIOLATED") +
             ", composite-vs-sum max rel diff " + sci(worst);
  return o;
}

// ---- 8: critical coupling report -----------------------------------------

Outcome criterion_critical_alpha() {
  const sc::ScenarioConfig cfg;
  const sc::CriticalAlphaReport rep = sc::critical_alpha_f(cfg);

  const double vs_analytic = rel_diff(rep.alpha_star, rep.analytic_estimate);
  const double d_err = rel_diff(rep.d_at_alpha_star, rep.threshold);

  const fs::path dir = fs::temp_directory_path() / "jcq_acceptance" / "crit";
  fs::remove_all(dir);
  const fs::path file = sc::emit_critical_alpha(rep, dir);
  std::ifstream in(file, std::ios::binary);
  const auto j = nlohmann::json::parse(in);
  const bool recorded = j.at("reference_alpha_f").get<double>() == 5e-8 &&
                        j.at("d_at_reference").get<double>() > 0.0 &&
                        j.contains("alpha_star");

  Outcome o;
  o.pass = vs_analytic <= 0.01 && d_err <= 0.02 && recorded;
  o.detail = "alpha* " + sci(rep.alpha_star) + " (vs analytic " +
             sci(vs_analytic) + "), D(alpha*) err " + sci(d_err) +
             ", reference comparison recorded";
  return o;
}

// ---- 9: byte determinism -------------------------------------------------

Outcome criterion_determinism() {
  const fs::path base = fs::temp_directory_path() / "jcq_acceptance";
  const fs::path da = base / "det_a";
  const fs::path db = base / "det_b";
  fs::remove_all(da);
  fs::remove_all(db);

  const sc::ScenarioConfig cfg = sc::figure_defaults(sc::Figure::fig3);
  const sc::Emitted ea =
      sc::emit_figure(sc::run_figure(sc::Figure::fig3, cfg), da);
  const sc::Emitted eb =
      sc::emit_figure(sc::run_figure(sc::Figure::fig3, cfg), db);

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  };

  bool same = ea.csv_files.size() == eb.csv_files.size();
  int n_files = 0;
  for (std::size_t i = 0; same && i < ea.csv_files.size(); ++i) {
    same = slurp(ea.csv_files[i]) == slurp(eb.csv_files[i]);
    ++n_files;
  }
  const bool manifests_same = slurp(ea.manifest) == slurp(eb.manifest);

  Outcome o;
  o.pass = same && manifests_same;
  o.detail = std::to_string(n_files) + " csv files byte-identical, manifest " +
             (manifests_same ? "identical" : "DIFFERS");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double time_limit_s;  // 0 = none
    std::function<Outcome()> fn;
  };
  const Criterion criteria[] = {
      {"kernel oracle equivalence", 10.0, criterion_oracle},
      {"1/f small-angle law", 0.0, criterion_small_angle},
      {"1/f temperature cancellation", 0.0, criterion_t_cancellation},
      {"dynamics identities", 5.0, criterion_dynamics},
      {"physical constants", 0.0, criterion_constants},
      {"ohmic family claims", 30.0, criterion_ohmic_family},
      {"1/f and composite families", 0.0, criterion_families},
      {"critical coupling report", 0.0, criterion_critical_alpha},
      {"output determinism", 0.0, criterion_determinism},
  };

  int failed = 0;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += " [exceeded " + sci(c.time_limit_s) + " s budget]";
    }
    std::printf("[%s] %d. %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", idx,
                c.name, o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }

  if (failed == 0) {
    std::printf("all %d acceptance criteria passed\n", idx);
  } else {
    std::printf("%d of %d acceptance criteria FAILED\n", failed, idx);
  }
  return failed == 0 ? 0 : 1;
}
