// jcq: short-time decoherence of a Josephson charge qubit.
//
// Subcommands:
//   bsq             dephasing exponent B^2(t) and phase kernel C(t) at one t
//   decohere        density-matrix evolution and deviation norm at one t
//   sweep           D(t) over a t grid -> CSV + manifest
//   figures figN    the canonical curve families (fig1/fig2/fig3)
//   critical-alpha  bisect alpha_f so that D(t_op) = threshold
//
// Exit codes: 0 success, 2 configuration / parameter errors, 3 quadrature
// non-convergence, 4 I/O failures.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jcq/dynamics.hpp"
#include "jcq/errors.hpp"
#include "jcq/scenario.hpp"
#include "jcq/simd/batch.hpp"

namespace sc = jcq::scenario;

namespace {

// one string-valued flag forwarded to the config-file grammar, so flags and
// file entries accept identical syntax and produce identical errors
struct FlagBinding {
  std::string key;
  std::string value;
  CLI::Option* opt = nullptr;
};

struct CommonFlags {
  std::vector<std::unique_ptr<FlagBinding>> flags;
  std::string config_file;
};

void add_common(CLI::App* cmd, CommonFlags& cf) {
  const auto add = [&](const char* flag, const char* key, const char* desc) {
    auto fb = std::make_unique<FlagBinding>();
    fb->key = key;
    fb->opt = cmd->add_option(flag, fb->value, desc);
    cf.flags.push_back(std::move(fb));
  };
  cmd->add_option("--config", cf.config_file,
                  "key=value config file (flags override it)");
  add("--ej-uev", "ej_uev", "Josephson energy E_J in ueV [51.8]");
  add("--temp-k", "temp_k", "temperature(s) in K, comma separated [0.03]");
  add("--eta", "eta", "Ohmic coupling strength [1e-6]");
  add("--alpha-f", "alpha_f", "1/f coupling(s), comma separated [1e-7]");
  add("--e-cut-ghz", "e_cut_ghz", "Ohmic soft-cutoff frequency in GHz [50]");
  add("--kappa-uev2", "kappa_uev2",
      "1/f scale kappa in ueV^2 (0 = derive from capacitances)");
  add("--cg-f", "cg_f", "gate capacitance in F [1e-18]");
  add("--cj-f", "cj_f", "junction capacitance in F [1e-16]");
  add("--ohmic-band-ghz", "ohmic_band_ghz", "Ohmic band lo:hi in GHz [1:50]");
  add("--f-band-hz", "f_band_hz", "1/f band lo:hi in Hz [1e3:1e9]");
  add("--t-grid", "t_grid",
      "dimensionless time grid start:stop:points [0:0.02:201]");
  add("--initial-state", "initial_state",
      "rho00,Re rho10,Im rho10 (rho11 = 1 - rho00) [1,0,0]");
  add("--sources", "sources", "ohmic|oneoverf|composite");
  add("--cutoff-sign", "cutoff_sign", "neg|pos Ohmic cutoff exponent sign");
  add("--band-interp", "band_interp",
      "read band edges as ordinary (E = h nu) or angular (E = hbar omega)");
  add("--rel-tol", "rel_tol", "quadrature relative tolerance [1e-9]");
  add("--threshold", "threshold",
      "decoherence threshold for critical-alpha [1e-4]");
  add("--out", "out", "output directory [out]");
  add("--backend", "backend", "auto|scalar|avx2 integrand backend");
}

struct Merged {
  sc::ScenarioConfig cfg;
  std::filesystem::path out_dir = "out";
  double threshold = 1e-4;
};

Merged build_config(const CommonFlags& cf, std::optional<sc::Figure> fig) {
  sc::ScenarioConfig cfg =
      fig ? sc::figure_defaults(*fig) : sc::ScenarioConfig{};

  sc::ConfigOverrides file_ov;
  if (!cf.config_file.empty())
    file_ov = sc::parse_config_file(cf.config_file);

  sc::ConfigOverrides flag_ov;
  for (const auto& fb : cf.flags)
    if (fb->opt->count() > 0) sc::apply_key_value(flag_ov, fb->key, fb->value);

  sc::apply_overrides(cfg, file_ov);
  sc::apply_overrides(cfg, flag_ov);

  Merged m;
  m.cfg = cfg;
  if (file_ov.out_dir) m.out_dir = *file_ov.out_dir;
  if (flag_ov.out_dir) m.out_dir = *flag_ov.out_dir;
  if (file_ov.threshold) m.threshold = *file_ov.threshold;
  if (flag_ov.threshold) m.threshold = *flag_ov.threshold;

  if (flag_ov.backend)
    jcq::simd::select_backend(*flag_ov.backend);
  else if (file_ov.backend)
    jcq::simd::select_backend(*file_ov.backend);
  return m;
}

void print_kv(const char* key, double v) {
  std::cout << key << sc::format_double(v) << "\n";
}

void run_bsq(const CommonFlags& cf, double t) {
  const Merged m = build_config(cf, std::nullopt);
  const sc::PointResult p = sc::run_point(m.cfg, t);
  std::cout << "backend     = " << p.params.backend << "\n";
  print_kv("t           = ", p.t);
  print_kv("tau_ps      = ", p.tau_ps);
  print_kv("b2_ohmic    = ", p.b2_ohmic);
  print_kv("b2_oneoverf = ", p.b2_oneoverf);
  print_kv("b2_total    = ", p.b2_total);
  print_kv("c_ohmic     = ", p.c_ohmic);
  print_kv("c_oneoverf  = ", p.c_oneoverf);
  print_kv("c_total     = ", p.c_total);
  print_kv("D           = ", p.D);
}

void run_decohere(const CommonFlags& cf, double t) {
  namespace dyn = jcq::dynamics;
  const Merged m = build_config(cf, std::nullopt);
  const sc::PointResult p = sc::run_point(m.cfg, t);

  const dyn::QubitState rho0 = m.cfg.initial_state;
  dyn::validate(rho0);
  const dyn::DynamicsParams dp{m.cfg.e_j_ueV, p.b2_total};
  dyn::EvolveInfo info;
  const dyn::QubitState rho = dyn::evolve(rho0, t, dp, &info);
  const dyn::Deviation sig = dyn::deviation(rho0, t, dp);

  std::cout << "backend       = " << p.params.backend << "\n";
  print_kv("t             = ", p.t);
  print_kv("tau_ps        = ", p.tau_ps);
  print_kv("b2_total      = ", p.b2_total);
  print_kv("rho00         = ", rho.rho00);
  print_kv("rho11         = ", rho.rho11);
  print_kv("Re rho10      = ", rho.rho10.real());
  print_kv("Im rho10      = ", rho.rho10.imag());
  print_kv("sigma11       = ", sig.sigma11);
  print_kv("Re sigma10    = ", sig.sigma10.real());
  print_kv("Im sigma10    = ", sig.sigma10.imag());
  print_kv("norm          = ", dyn::norm_lambda(sig));
  print_kv("norm (closed) = ", dyn::norm_closed_form(rho0, t, dp));
  print_kv("D (worst)     = ", dyn::decoherence_D(dp));
  if (info.beyond_validity)
    std::cout << "note: t exceeds the short-time validity window 1/E_J = "
              << sc::format_double(info.validity_limit_t)
              << "; closed forms are extrapolated\n";
}

void run_sweep_cmd(const CommonFlags& cf) {
  const Merged m = build_config(cf, std::nullopt);
  const sc::SweepResult res = sc::run_sweep(m.cfg);
  const sc::Emitted em = sc::emit_sweep(res, m.out_dir);
  double max_d = 0.0;
  for (const auto& row : res.rows) max_d = std::max(max_d, row.D);
  for (const auto& f : em.csv_files)
    std::cout << "wrote " << f.string() << "\n";
  std::cout << "wrote " << em.manifest.string() << "\n";
  print_kv("max D = ", max_d);
}

void run_figures(const CommonFlags& cf, const std::string& which_name) {
  sc::Figure which = sc::Figure::fig1;
  if (which_name == "fig2") which = sc::Figure::fig2;
  else if (which_name == "fig3") which = sc::Figure::fig3;

  const Merged m = build_config(cf, which);
  const sc::FigureResult fr = sc::run_figure(which, m.cfg);
  const sc::Emitted em = sc::emit_figure(fr, m.out_dir);
  for (const auto& f : em.csv_files)
    std::cout << "wrote " << f.string() << "\n";
  std::cout << "wrote " << em.manifest.string() << "\n";
}

void run_critical(const CommonFlags& cf, std::optional<double> t_op_flag) {
  const Merged m = build_config(cf, std::nullopt);
  const double t_op = t_op_flag ? *t_op_flag : 1.0 / m.cfg.e_j_ueV;
  const sc::CriticalAlphaReport rep =
      sc::critical_alpha_f(m.threshold, t_op, m.cfg);
  const auto file = sc::emit_critical_alpha(rep, m.out_dir);

  std::cout << "backend           = " << rep.params.backend << "\n";
  print_kv("threshold         = ", rep.threshold);
  print_kv("t_op              = ", rep.t_op);
  print_kv("alpha_star        = ", rep.alpha_star);
  print_kv("analytic estimate = ", rep.analytic_estimate);
  print_kv("D(alpha_star)     = ", rep.d_at_alpha_star);
  print_kv("reference alpha_f = ", rep.reference_alpha_f);
  print_kv("D(reference)      = ", rep.d_at_reference);
  std::cout << "iterations        = " << rep.iterations << "\n";
  std::cout << "wrote " << file.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jcq: short-time decoherence of a Josephson charge qubit under Ohmic "
      "and 1/f noise"};
  app.require_subcommand(1);

  CommonFlags cf_bsq, cf_dec, cf_sweep, cf_fig, cf_crit;

  CLI::App* bsq = app.add_subcommand(
      "bsq", "dephasing exponent B^2(t) and phase kernel C(t) at one time");
  double t_bsq = 0.02;
  bsq->add_option("--t", t_bsq, "dimensionless time [0.02]");
  add_common(bsq, cf_bsq);

  CLI::App* dec = app.add_subcommand(
      "decohere", "density-matrix evolution and deviation norm at one time");
  double t_dec = 0.02;
  dec->add_option("--t", t_dec, "dimensionless time [0.02]");
  add_common(dec, cf_dec);

  CLI::App* swp =
      app.add_subcommand("sweep", "D(t) over a time grid -> CSV + manifest");
  add_common(swp, cf_sweep);

  CLI::App* fig = app.add_subcommand(
      "figures", "canonical curve families -> CSVs + manifest");
  std::string fig_name;
  fig->add_option("figure", fig_name, "fig1 | fig2 | fig3")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  add_common(fig, cf_fig);

  CLI::App* crit = app.add_subcommand(
      "critical-alpha", "bisect alpha_f so that D(t_op) = threshold");
  std::optional<double> t_op;
  crit->add_option("--t-op", t_op,
                   "operation time (dimensionless) [1/E_J]");
  add_common(crit, cf_crit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bsq->parsed()) run_bsq(cf_bsq, t_bsq);
    else if (dec->parsed()) run_decohere(cf_dec, t_dec);
    else if (swp->parsed()) run_sweep_cmd(cf_sweep);
    else if (fig->parsed()) run_figures(cf_fig, fig_name);
    else if (crit->parsed()) run_critical(cf_crit, t_op);
    return 0;
  } catch (const jcq::IntegrationError& e) {
    std::cerr << "error: " << e.what()
              << "\n  best estimate: " << sc::format_double(e.best_estimate)
              << "  achieved rel error: "
              << sc::format_double(e.achieved_rel_error) << "\n";
    return 3;
  } catch (const jcq::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jcq::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jcq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
