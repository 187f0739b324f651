#include "jcq/bath_kernel.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "jcq/errors.hpp"
#include "jcq/simd/batch.hpp"
#include "jcq/units.hpp"

namespace jcq::kernel {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre nodes/weights on [-1, 1], ascending
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.989400934991649933, -0.944575023073232576, -0.865631202387831744,
    -0.755404408355003034, -0.617876244402643748, -0.458016777657227386,
    -0.281603550779258913, -0.0950125098376374402, 0.0950125098376374402,
    0.281603550779258913,  0.458016777657227386,  0.617876244402643748,
    0.755404408355003034,  0.865631202387831744,  0.944575023073232576,
    0.989400934991649933,
};
constexpr double kGLWeight[kGL] = {
    0.0271524594117540949, 0.0622535239386478929, 0.0951585116824927848,
    0.124628971255533872,  0.149595988816576732,  0.169156519395002538,
    0.182603415044923589,  0.189450610455068496,  0.189450610455068496,
    0.182603415044923589,  0.169156519395002538,  0.149595988816576732,
    0.124628971255533872,  0.0951585116824927848, 0.0622535239386478929,
    0.0271524594117540949,
};

// memory guard: refuse to materialize more nodes than this in one level;
// reaching it means the request is far outside the model's regime (the
// oscillation guard alone caps panels at ~2 t E_hi / pi)
constexpr std::size_t kMaxNodesPerLevel = std::size_t{1} << 21;

struct Panel {
  double ua, ub;  // u = ln E
};

void validate_spec(const QuadratureSpec& q) {
  if (!(q.rel_tol > 0.0) || !std::isfinite(q.rel_tol)) {
    throw DomainError("rel_tol must be a positive finite number");
  }
  if (q.max_refinements < 1) {
    throw DomainError("max_refinements must be >= 1");
  }
  if (q.panels_per_decade < 1) {
    throw DomainError("panels_per_decade must be >= 1");
  }
}

bool zero_coupling(const noise::NoiseMember& m) {
  return (m.kind == noise::NoiseMember::Kind::ohmic && m.ohmic.eta == 0.0) ||
         (m.kind == noise::NoiseMember::Kind::oneoverf &&
          m.oneoverf.alpha_f == 0.0);
}

const char* kind_name(const noise::NoiseMember& m) {
  return m.kind == noise::NoiseMember::Kind::ohmic ? "ohmic" : "oneoverf";
}

// split [ua, ub] until the sin(E t/2) phase across each panel is <= pi/4
void push_with_guard(Panel p, double t, std::vector<Panel>& out) {
  const double span = (std::exp(p.ub) - std::exp(p.ua)) * t * 0.5;
  if (span > 0.25 * kPi && (p.ub - p.ua) > 1e-12) {
    const double mid = 0.5 * (p.ua + p.ub);
    push_with_guard({p.ua, mid}, t, out);
    push_with_guard({mid, p.ub}, t, out);
  } else {
    out.push_back(p);
  }
}

std::vector<Panel> initial_panels(const noise::Band& band, double t,
                                  int per_decade) {
  const double ua = std::log(band.E_lo_ueV);
  const double ub = std::log(band.E_hi_ueV);
  const double decades = (ub - ua) / std::log(10.0);
  const int n0 = std::max(1, static_cast<int>(std::ceil(per_decade * decades)));
  std::vector<Panel> out;
  out.reserve(static_cast<std::size_t>(n0));
  for (int i = 0; i < n0; ++i) {
    const double a = ua + (ub - ua) * i / n0;
    const double b = ua + (ub - ua) * (i + 1) / n0;
    push_with_guard({a, b}, t, out);
  }
  return out;
}

std::vector<Panel> halve_all(const std::vector<Panel>& in) {
  std::vector<Panel> out;
  out.reserve(in.size() * 2);
  for (const Panel& p : in) {
    const double mid = 0.5 * (p.ua + p.ub);
    out.push_back({p.ua, mid});
    out.push_back({mid, p.ub});
  }
  return out;
}

struct LevelScratch {
  std::vector<double> e;     // node energies
  std::vector<double> wq;    // quadrature weights incl. the dE = E du factor
  std::vector<double> outb;  // b2 integrand values
  std::vector<double> outc;  // c_phase integrand values
};

struct LevelTotals {
  double b2;  // without the overall factor 8
  double cp;
};

// evaluate both integrals over one panel set; node energies are produced
// with std::exp so every backend integrates the same abscissae
LevelTotals eval_level(const std::vector<Panel>& panels,
                       const noise::NoiseMember& m, double t, double two_kT,
                       const simd::KernelTable& table, LevelScratch& s,
                       std::uint64_t& evals) {
  const std::size_t n = panels.size() * kGL;
  s.e.resize(n);
  s.wq.resize(n);
  s.outb.resize(n);
  s.outc.resize(n);
  std::size_t idx = 0;
  for (const Panel& p : panels) {
    const double c = 0.5 * (p.ua + p.ub);
    const double h = 0.5 * (p.ub - p.ua);
    for (int j = 0; j < kGL; ++j) {
      const double u = c + h * kGLNode[j];
      const double E = std::exp(u);
      s.e[idx] = E;
      s.wq[idx] = kGLWeight[j] * h * E;
      ++idx;
    }
  }

  if (m.kind == noise::NoiseMember::Kind::ohmic) {
    const simd::OhmicTerm term{
        m.ohmic.eta, 1.0 / m.ohmic.E_cut_ueV,
        m.ohmic.cutoff == noise::CutoffSign::negative ? -1.0 : 1.0};
    table.b2_ohmic(s.e.data(), s.outb.data(), n, t, two_kT, term);
    table.cp_ohmic(s.e.data(), s.outc.data(), n, t, term);
  } else {
    const simd::OneOverFTerm term{m.oneoverf.kappa_ueV2 *
                                  m.oneoverf.alpha_f};
    table.b2_oneoverf(s.e.data(), s.outb.data(), n, t, two_kT, term);
    table.cp_oneoverf(s.e.data(), s.outc.data(), n, t, two_kT, term);
  }
  evals += 2 * static_cast<std::uint64_t>(n);

  // fixed-order accumulation keeps results bit-reproducible
  LevelTotals tot{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    tot.b2 += s.wq[i] * s.outb[i];
    tot.cp += s.wq[i] * s.outc[i];
  }
  return tot;
}

struct MemberIntegral {
  double b2 = 0.0;        // without the factor 8
  double cp = 0.0;
  double delta_b2 = 0.0;  // |last refinement change|
  double delta_cp = 0.0;
  std::uint64_t evals = 0;
};

MemberIntegral integrate_member(const noise::NoiseMember& m, double t,
                                double two_kT, const QuadratureSpec& spec,
                                const simd::KernelTable& table) {
  MemberIntegral out;
  if (zero_coupling(m)) {
    return out;  // integrand identically zero
  }

  std::vector<Panel> panels = initial_panels(m.band, t, spec.panels_per_decade);
  LevelScratch scratch;
  LevelTotals prev = eval_level(panels, m, t, two_kT, table, scratch, out.evals);

  for (int r = 1; r <= spec.max_refinements; ++r) {
    if (panels.size() * 2 * kGL > kMaxNodesPerLevel) {
      throw IntegrationError(
          std::string("quadrature node budget exhausted for ") + kind_name(m) +
              " member (t = " + std::to_string(t) + ")",
          8.0 * prev.b2, out.delta_b2 / std::max(std::abs(prev.b2), 1e-300));
    }
    panels = halve_all(panels);
    const LevelTotals cur =
        eval_level(panels, m, t, two_kT, table, scratch, out.evals);

    out.delta_b2 = std::abs(cur.b2 - prev.b2);
    out.delta_cp = std::abs(cur.cp - prev.cp);
    const bool ok_b2 =
        out.delta_b2 <= spec.rel_tol * std::max(std::abs(cur.b2), 1e-300);
    const bool ok_cp =
        out.delta_cp <= spec.rel_tol * std::max(std::abs(cur.cp), 1e-300);
    prev = cur;
    if (ok_b2 && ok_cp) {
      out.b2 = cur.b2;
      out.cp = cur.cp;
      return out;
    }
  }

  throw IntegrationError(
      std::string("quadrature failed to reach rel_tol for ") + kind_name(m) +
          " member after " + std::to_string(spec.max_refinements) +
          " refinements (t = " + std::to_string(t) + ")",
      8.0 * prev.b2, out.delta_b2 / std::max(std::abs(prev.b2), 1e-300));
}

}  // namespace

KernelResult compute_kernels(const KernelRequest& req) {
  noise::validate(req.model);
  validate_spec(req.quadrature);
  if (!(req.t >= 0.0) || !std::isfinite(req.t)) {
    throw DomainError("t must be >= 0 and finite, got " +
                      std::to_string(req.t));
  }
  const double two_kT = 2.0 * units::thermal_energy(req.T_K);

  KernelResult res{0.0, 0.0, 0.0, 0};
  if (req.t == 0.0) {
    return res;  // sin^2 and (x - sin x) factors vanish identically
  }

  const simd::KernelTable& table = simd::active_table();
  double sum_b2 = 0.0, sum_cp = 0.0;
  double sum_db = 0.0, sum_dc = 0.0;
  for (const noise::NoiseMember& m : req.model.members) {
    const MemberIntegral mi =
        integrate_member(m, req.t, two_kT, req.quadrature, table);
    sum_b2 += mi.b2;
    sum_cp += mi.cp;
    sum_db += mi.delta_b2;
    sum_dc += mi.delta_cp;
    res.evaluations += mi.evals;
  }

  res.b_squared = 8.0 * sum_b2;
  res.c_phase = sum_cp;
  const double rel_b = sum_b2 > 0.0 ? sum_db / sum_b2 : 0.0;
  const double rel_c = sum_cp > 0.0 ? sum_dc / sum_cp : 0.0;
  res.est_rel_error = std::max(rel_b, rel_c);
  return res;
}

double b_squared(const KernelRequest& req) {
  return compute_kernels(req).b_squared;
}

double c_phase(const KernelRequest& req) { return compute_kernels(req).c_phase; }

double b_squared_discrete(const noise::NoiseModel& model, double T_K, double t,
                          int n_modes) {
  noise::validate(model);
  if (n_modes < 2) {
    throw DomainError("n_modes must be >= 2, got " + std::to_string(n_modes));
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("t must be >= 0 and finite");
  }
  const double two_kT = 2.0 * units::thermal_energy(T_K);
  if (t == 0.0) {
    return 0.0;
  }

  // Deliberately independent of the adaptive path: plain scalar loop over
  // a midpoint log grid, weight formulas inlined, libm transcendentals.
  double total = 0.0;
  for (const noise::NoiseMember& m : model.members) {
    if (zero_coupling(m)) {
      continue;
    }
    const double ulo = std::log(m.band.E_lo_ueV);
    const double du = (std::log(m.band.E_hi_ueV) - ulo) / n_modes;
    double sum = 0.0;
    for (int k = 0; k < n_modes; ++k) {
      const double E = std::exp(ulo + (k + 0.5) * du);
      const double x = E / two_kT;
      const double coth = x < 1e-6 ? 1.0 / x + x / 3.0 : 1.0 / std::tanh(x);
      double w;  // W(E_k)
      if (m.kind == noise::NoiseMember::Kind::ohmic) {
        const double sgn =
            m.ohmic.cutoff == noise::CutoffSign::negative ? -1.0 : 1.0;
        w = m.ohmic.eta * E * std::exp(sgn * E / m.ohmic.E_cut_ueV);
      } else {
        w = m.oneoverf.kappa_ueV2 * m.oneoverf.alpha_f / (E * coth);
      }
      const double g2 = w * E * du;  // |g_k|^2 = W(E_k) dE_k, dE_k = E_k du
      const double s = std::sin(0.5 * E * t);
      sum += g2 * s * s * coth / (E * E);
    }
    total += 8.0 * sum;
  }
  return total;
}

}  // namespace jcq::kernel
