#include "vorwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "vorwave/bounds.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/kernel.hpp"
#include "vorwave/spectral.hpp"

namespace vorwave {

namespace {

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

AuditCheck rel_check(std::string name, double lhs, double rhs, std::string relation) {
  AuditCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  if (relation == "<") {
    c.pass = lhs < rhs;
    c.margin = rhs - lhs;
  } else if (relation == "<=") {
    c.pass = lhs <= rhs;
    c.margin = rhs - lhs;
  } else if (relation == ">") {
    c.pass = lhs > rhs;
    c.margin = lhs - rhs;
  } else {  // ">="
    c.pass = lhs >= rhs;
    c.margin = lhs - rhs;
  }
  c.relation = std::move(relation);
  return c;
}

// Strict comparison that classifies a both-sides-vanish case (constant
// profile, zero amplitude) as a degenerate pass instead of a failure.
AuditCheck strict_or_degenerate(std::string name, double lhs, double rhs,
                                std::string relation, double zero_scale) {
  AuditCheck c = rel_check(std::move(name), lhs, rhs, std::move(relation));
  if (!c.pass && std::abs(lhs) <= zero_scale && std::abs(rhs) <= zero_scale) {
    c.pass = true;
    c.degenerate = true;
  }
  return c;
}

AuditCheck identity_check(std::string name, double lhs, double rhs, double tol) {
  AuditCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = "~";
  c.margin = tol - std::abs(lhs - rhs);
  c.pass = std::abs(lhs - rhs) <= tol;
  return c;
}

void finalize(AuditReport& rep) {
  rep.overall = !rep.inconclusive;
  for (const auto& c : rep.checks) rep.overall = rep.overall && c.pass;
}

Grid fine_grid_for(const SurfaceProfile& p) {
  return Grid(4 * std::max(p.grid().n_points(), 2 * (p.degree() + 1)));
}

double fine_max(const SurfaceProfile& p) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : p.values_on(fine_grid_for(p))) hi = std::max(hi, v);
  return hi;
}

double fine_sup_abs(const SurfaceProfile& p) {
  double s = 0.0;
  for (double v : p.values_on(fine_grid_for(p))) s = std::max(s, std::abs(v));
  return s;
}

double fine_sup_diff(const SurfaceProfile& a, const SurfaceProfile& b) {
  const Grid fine(4 * std::max({a.grid().n_points(), b.grid().n_points(),
                                2 * (std::max(a.degree(), b.degree()) + 1)}));
  const std::vector<double> av = a.values_on(fine);
  const std::vector<double> bv = b.values_on(fine);
  double s = 0.0;
  for (int j = 0; j < fine.n_points(); ++j) s = std::max(s, std::abs(av[j] - bv[j]));
  return s;
}

struct Admissibility {
  bool even = false;
  bool positive = false;
  bool increasing = false;  // f' > 0 strictly at interior nodes of (0, pi)
  double amplitude = 0.0;
  double slope = 0.0;  // sup |f'|
};

Admissibility assess(const SurfaceProfile& f) {
  Admissibility adm;
  adm.even = f.parity() == Parity::even;
  const Grid fine = fine_grid_for(f);
  const std::vector<double> fv = f.values_on(fine);
  const std::vector<double> fpv = differentiate(f).values_on(fine);
  adm.positive = true;
  for (double v : fv) adm.positive = adm.positive && v > 0.0;
  adm.increasing = true;
  for (int j = 1; j < fine.n_points() / 2; ++j) {
    adm.increasing = adm.increasing && fpv[j] > 0.0;
  }
  adm.amplitude = f.trough() - f.crest();
  for (double v : fpv) adm.slope = std::max(adm.slope, std::abs(v));
  return adm;
}

}  // namespace

SurfaceProfile random_admissible_profile(Rng& rng, const Grid& grid, int max_modes) {
  if (max_modes < 1) throw ParameterError("max_modes must be >= 1");
  const int mm = std::min(max_modes, grid.n_modes() - 1);
  for (int attempt = 0; attempt < 500; ++attempt) {
    const int count = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(mm)));
    const double c0 = rng.uniform(0.5, 3.0);
    std::vector<double> amp(count + 1, 0.0);
    amp[1] = rng.uniform(0.1, 0.8);
    for (int k = 2; k <= count; ++k) {
      amp[k] = rng.uniform(-0.35, 0.35) * amp[1] / (k * k);
    }
    std::vector<double> cc(grid.n_modes() + 1, 0.0);
    for (int k = 1; k <= count; ++k) {
      cc[0] += amp[k];
      cc[k] = -amp[k];
    }
    cc[0] += c0;
    SurfaceProfile f = SurfaceProfile::from_cos(grid, std::move(cc));
    const Admissibility adm = assess(f);
    if (adm.even && adm.positive && adm.increasing) return f;
  }
  throw DegeneracyError("rejection sampling failed to produce an admissible profile");
}

AuditReport audit_kernel(double depth, int n_samples) {
  if (!(depth > 0.0)) throw ParameterError("audit_kernel needs depth > 0");
  if (n_samples < 8) throw ParameterError("audit_kernel needs at least 8 samples");
  AuditReport rep;
  rep.subject = "kernel depth=" + num(depth);

  std::vector<double> s(n_samples), b(n_samples), bp(n_samples);
  double max_abs_b = 0.0, max_abs_bp = 0.0, tail_b = 0.0, tail_bp = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    s[i] = (i + 1) * kPi / n_samples;
    const KernelEval be = beta_eval(s[i], depth);
    const KernelEval pe = beta_prime_eval(s[i], depth);
    b[i] = be.value;
    bp[i] = pe.value;
    max_abs_b = std::max(max_abs_b, std::abs(b[i]));
    max_abs_bp = std::max(max_abs_bp, std::abs(bp[i]));
    tail_b = std::max(tail_b, be.tail_bound);
    tail_bp = std::max(tail_bp, pe.tail_bound);
  }

  const double beta_half = beta_eval(kPi / 2.0, depth).value;
  rep.checks.push_back(
      rel_check("quarter_period_floor", beta_half, (kPi - 2.0) / kPi, ">="));

  // beta is odd and 2*pi-periodic, so beta(pi) vanishes identically; strict
  // positivity is a statement about the open interval.
  double min_b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    if (s[i] < kPi) min_b = std::min(min_b, b[i]);
  }
  rep.checks.push_back(rel_check("positive_before_half_period", min_b, 0.0, ">"));
  rep.checks.push_back(identity_check("vanishes_at_half_period",
                                      beta_eval(kPi, depth).value, 0.0,
                                      1e-13 * std::max(1.0, max_abs_b)));

  double min_drop = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n_samples; ++i) min_drop = std::min(min_drop, b[i] - b[i + 1]);
  rep.checks.push_back(rel_check("strictly_decreasing", min_drop, 0.0, ">"));

  double max_asym = 0.0;
  for (int i = 0; i < n_samples; i += 7) {
    max_asym = std::max(max_asym, std::abs(beta_eval(-s[i], depth).value + b[i]));
  }
  rep.checks.push_back(identity_check("odd_symmetry", max_asym, 0.0, 1e-12 * max_abs_b));

  int worst = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const double env = 1.0 / depth + 2.0 / (s[i] * s[i]) + 0.5;
    const double gap = env - (-bp[i]);
    if (gap < worst_gap) {
      worst_gap = gap;
      worst = i;
    }
  }
  rep.checks.push_back(rel_check("derivative_envelope", -bp[worst],
                                 1.0 / depth + 2.0 / (s[worst] * s[worst]) + 0.5, "<"));

  // Each series' truncation tail is judged against the sampled magnitude of
  // the quantity it approximates: the derivative grows like 2/s^2 near the
  // puncture, so its absolute tail can dwarf max |beta| on deep strips even
  // when every evaluation is fully converged in relative terms.
  const double rel_tail = std::max(tail_b / std::max(1.0, max_abs_b),
                                   tail_bp / std::max(1.0, max_abs_bp));
  rep.checks.push_back(rel_check("truncation_tail", rel_tail, 1e-12, "<="));

  finalize(rep);
  return rep;
}

AuditReport audit_quadratic_lower(const SurfaceProfile& f, double depth) {
  if (!(depth > 0.0)) throw ParameterError("audit_quadratic_lower needs depth > 0");
  AuditReport rep;
  rep.subject = "quadratic_lower degree=" + std::to_string(f.degree());

  const Admissibility adm = assess(f);
  const double scale_f = std::max(1.0, f.sup_abs());
  const double tiny = 1e-13 * scale_f;
  // A profile is degenerate only when its oscillation is below noise; a
  // negative amplitude means f decreases from 0 to pi and must be routed to
  // the hypothesis failure below, not silently excused.
  const bool degenerate = std::abs(adm.amplitude) <= tiny;
  if (!degenerate && !(adm.even && adm.positive && adm.increasing)) {
    AuditCheck hyp;
    hyp.name = "admissible_hypotheses";
    hyp.relation = "hypothesis";
    hyp.pass = false;
    rep.checks.push_back(hyp);
    rep.inconclusive = true;
    finalize(rep);
    return rep;
  }

  const double z = f.crest(), p = f.trough(), A = adm.amplitude;
  const SurfaceProfile fp = differentiate(f);
  const SurfaceProfile vv =
      multiply(f, hilbert(fp, depth)) + hilbert(multiply(f, fp), depth);
  const double V = vv.value_at(kPi) - vv.value_at(0.0);
  const double beta_half = beta_eval(kPi / 2.0, depth).value;
  const double scale2 = std::max(1.0, scale_f * scale_f);

  rep.checks.push_back(strict_or_degenerate(
      "kernel_floor_bound", V, beta_half / (2.0 * kPi) * A * A, ">=", 1e-12 * scale2));
  rep.checks.push_back(strict_or_degenerate("maximum_principle_bound", V,
                                            A * A / (2.0 * depth), ">", 1e-12 * scale2));

  const SurfaceProfile Bpi = -multiply(p - f, 0.5 * f + 1.5 * p);
  const SurfaceProfile B0 = -multiply(f - z, 0.5 * f + 1.5 * z);
  const double vbb = hilbert_prime(Bpi, depth).value_at(kPi) +
                     hilbert_prime(B0, depth).value_at(0.0);
  rep.checks.push_back(
      identity_check("quadratic_split_identity", V, vbb, 1e-9 * std::max(1.0, std::abs(V))));
  rep.checks.push_back(identity_check("touch_at_trough", Bpi.value_at(kPi), 0.0,
                                      1e-11 * scale2));
  rep.checks.push_back(identity_check("touch_at_crest", B0.value_at(0.0), 0.0,
                                      1e-11 * scale2));
  rep.checks.push_back(
      rel_check("trough_part_nonpositive", fine_max(Bpi), 1e-11 * scale2, "<="));
  rep.checks.push_back(
      rel_check("crest_part_nonpositive", fine_max(B0), 1e-11 * scale2, "<="));

  const SurfaceProfile comb = -(Bpi + B0);
  const SurfaceProfile comb_ref = A * ((1.5 * (p + z)) - f);
  rep.checks.push_back(identity_check("mean_combination", fine_sup_diff(comb, comb_ref),
                                      0.0, 1e-11 * scale2));
  rep.checks.push_back(strict_or_degenerate("mean_lower_bound",
                                            -(Bpi.mean() + B0.mean()), A * A / 2.0, ">",
                                            1e-12 * scale2));

  finalize(rep);
  return rep;
}

AuditReport audit_cubic_upper(const SurfaceProfile& f, const PhysicalParams& params) {
  params.validate();
  const double d = params.d;
  AuditReport rep;
  rep.subject = "cubic_upper degree=" + std::to_string(f.degree());

  const Admissibility adm = assess(f);
  const double scale_f = std::max(1.0, f.sup_abs());
  const double scale3 = scale_f * scale_f * scale_f;
  const double tiny = 1e-13 * scale_f;
  // Same routing as the quadratic audit: only a vanishing oscillation is
  // degenerate; a decreasing profile fails the hypotheses instead.
  const bool degenerate = std::abs(adm.amplitude) <= tiny;
  if (!degenerate && !(adm.even && adm.positive && adm.increasing)) {
    AuditCheck hyp;
    hyp.name = "admissible_hypotheses";
    hyp.relation = "hypothesis";
    hyp.pass = false;
    rep.checks.push_back(hyp);
    rep.inconclusive = true;
    finalize(rep);
    return rep;
  }

  const double A = adm.amplitude, N = adm.slope;
  const double c = 1.0 / d + 0.5;
  const SurfaceProfile Ks = K_spectral(f, d);
  const double lhs = Ks.value_at(kPi) - Ks.value_at(0.0);
  const double delta = degenerate ? kPi : std::min(A / N, kPi);
  const double mid = (2.0 / 3.0) * (c + 2.0 / (kPi * delta)) * A * A * A +
                     (4.0 / (3.0 * kPi)) * N * N * delta * A;
  const double fin = (2.0 / 3.0) * c * A * A * A + (8.0 / (3.0 * kPi)) * N * A * A;

  rep.checks.push_back(
      strict_or_degenerate("delta_split_bound", lhs, mid, "<", 1e-12 * scale3));
  rep.checks.push_back(
      rel_check("chain_consistency", mid, fin * (1.0 + 1e-12) + 1e-300, "<="));
  rep.checks.push_back(
      strict_or_degenerate("headline_bound", lhs, fin, "<", 1e-12 * scale3));

  const SurfaceProfile Ki = K_integral(f, d);
  rep.checks.push_back(identity_check("transform_route_agreement",
                                      fine_sup_diff(Ks, Ki), 0.0,
                                      1e-9 * std::max(1.0, fine_sup_abs(Ks))));

  const double z = f.crest(), p = f.trough();
  const SurfaceProfile pf = p - f;
  const SurfaceProfile fz = f - z;
  const SurfaceProfile Spi =
      (1.0 / 6.0) * multiply(multiply(pf, pf), (3.0 * z - p) - 2.0 * f);
  const SurfaceProfile S0 =
      (1.0 / 6.0) * multiply(multiply(fz, fz), 2.0 * f + (z - 3.0 * p));
  const SurfaceProfile sum_ref = SurfaceProfile::constant(f.grid(), -A * A * A / 6.0);
  rep.checks.push_back(identity_check("cubic_split_sum", fine_sup_diff(Spi + S0, sum_ref),
                                      0.0, 1e-11 * scale3));

  finalize(rep);
  return rep;
}

AuditReport audit_section_three(const PhysicalParams& params, const BranchPoint& point) {
  params.validate();
  const double d = params.d, g = params.g, gamma = params.gamma;
  AuditReport rep;
  rep.subject = "section_three s=" + num(point.arclength_s);

  const SurfaceProfile f = eta_to_f(point.eta, params);
  const SectionThreeReport r3 = section_three_report(f, params);
  const double A = r3.amplitude;
  const double smax =
      std::max({1.0, std::abs(r3.L_val), std::abs(r3.R_val), std::abs(r3.V_val)});
  const double scale2 = std::max(1.0, fine_sup_abs(r3.Bpi));
  const double scale3 = std::max(1.0, fine_sup_abs(r3.Spi));

  rep.checks.push_back(
      identity_check("quadratic_split_identity", r3.vbb_defect, 0.0, 1e-9 * smax));
  rep.checks.push_back(
      identity_check("cubic_split_identity", r3.whs_defect, 0.0, 1e-9 * smax));

  rep.checks.push_back(strict_or_degenerate(
      "hopf_quadratic_trough", dirichlet_G(r3.Bpi, d).value_at(kPi), 0.0, ">",
      1e-11 * scale2));
  rep.checks.push_back(strict_or_degenerate(
      "hopf_quadratic_crest", dirichlet_G(r3.B0, d).value_at(0.0), 0.0, ">",
      1e-11 * scale2));
  rep.checks.push_back(strict_or_degenerate(
      "hopf_cubic_trough", dirichlet_G(r3.Spi, d).value_at(kPi), 0.0, ">",
      1e-11 * scale3));
  rep.checks.push_back(strict_or_degenerate(
      "hopf_cubic_crest", dirichlet_G(r3.S0, d).value_at(0.0), 0.0, ">",
      1e-11 * scale3));

  const double r_floor = A * A / (2.0 * d) + gamma * gamma * A * A * A / (12.0 * g * d);
  rep.checks.push_back(strict_or_degenerate("right_split_lower_bound", r_floor, r3.R_val,
                                            "<", 1e-12 * smax));

  if (gamma <= 0.0) {
    double psi_max = -std::numeric_limits<double>::infinity();
    const SurfaceProfile psi = psi_y_trace(point.eta, params);
    for (double v : psi.values_on(fine_grid_for(psi))) psi_max = std::max(psi_max, v);
    if (psi_max <= 0.0) {
      rep.checks.push_back(rel_check("left_split_upper_bound", r3.L_val, A, "<="));
    }
    // a positive vertical-velocity trace voids the hypothesis; skipped, not failed
  }

  finalize(rep);
  return rep;
}

AuditReport audit_crest_trough(const PhysicalParams& params, const BranchPoint& point) {
  params.validate();
  const double d = params.d, g = params.g, gamma = params.gamma;
  AuditReport rep;
  rep.subject = "crest_trough s=" + num(point.arclength_s);

  const SurfaceProfile f = eta_to_f(point.eta, params);
  const SectionThreeReport r3 = section_three_report(f, params);
  const double A = r3.amplitude;
  const double smax = std::max({1.0, std::abs(r3.L_val), std::abs(r3.R_val)});
  rep.checks.push_back(
      identity_check("crest_trough_identity", r3.L_val, r3.R_val, 1e-9 * smax));

  if (gamma > 0.0) {
    const double N = fine_sup_abs(differentiate(f));
    const double f2 = product_mean(f, f);
    const double beta_half = beta_eval(kPi / 2.0, d).value;
    const double lhs3 = 1.0 - params.m * gamma / (d * g) +
                        gamma * gamma * params.Q * params.Q / (8.0 * d * g * g * g) -
                        gamma * gamma * f2 / (2.0 * d * g);
    const double rhs3 =
        (gamma * gamma / (2.0 * g) + beta_half / (2.0 * kPi)) * A -
        (gamma * gamma / (3.0 * g)) * (1.0 / d + 0.5) * A * A -
        (4.0 * gamma * gamma / (3.0 * kPi * g)) * N * A;
    rep.checks.push_back(rel_check("slope_chain", lhs3, rhs3, ">="));

    const AdverseCoefficients co = adverse_DEF(params, f2, N, AdverseRoute::slope_N);
    rep.checks.push_back(rel_check("closing_quadratic",
                                   A * A + (co.D - co.E) * A + co.F, 0.0, ">="));
  }

  finalize(rep);
  return rep;
}

}  // namespace vorwave
