#include "vorwave/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vorwave/errors.hpp"
#include "vorwave/kernel.hpp"
#include "vorwave/spectral.hpp"

namespace vorwave {

void PhysicalParams::validate() const {
  if (!(g > 0.0)) throw ParameterError("gravity must be > 0");
  if (!(d > 0.0)) throw ParameterError("depth must be > 0");
  if (!(Q > 0.0)) throw ParameterError("Bernoulli constant must be > 0");
  if (!(m < 0.0)) throw ParameterError("flux must be < 0");
  if (!std::isfinite(gamma)) throw ParameterError("vorticity must be finite");
}

SurfaceProfile eta_to_f(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  return pp.Q / (2.0 * pp.g) - eta;
}

SurfaceProfile f_to_eta(const SurfaceProfile& f, const PhysicalParams& pp) {
  pp.validate();
  return pp.Q / (2.0 * pp.g) - f;
}

double compute_c1(const SurfaceProfile& f, const PhysicalParams& pp) {
  pp.validate();
  const double f2 = product_mean(f, f);
  return -pp.m * pp.gamma / (pp.d * pp.g) +
         pp.gamma * pp.gamma * pp.Q * pp.Q / (8.0 * pp.d * pp.g * pp.g * pp.g) -
         pp.gamma * pp.gamma * f2 / (2.0 * pp.d * pp.g);
}

double compute_b(const SurfaceProfile& f, const PhysicalParams& pp) {
  pp.validate();
  const double c1 = compute_c1(f, pp);
  const double fHfp = product_mean(f, hilbert(differentiate(f), pp.d));
  return pp.Q / (2.0 * pp.g) + pp.gamma * pp.m / pp.g - pp.d - fHfp +
         pp.Q / (2.0 * pp.g) * c1 -
         pp.gamma * pp.gamma * pp.Q * pp.Q / (8.0 * pp.g * pp.g * pp.g);
}

SurfaceProfile K_spectral(const SurfaceProfile& f, double depth) {
  const SurfaceProfile fp = differentiate(f);
  const SurfaceProfile f2 = multiply(f, f);
  return multiply(f2, hilbert(fp, depth)) + hilbert(multiply(f2, fp), depth) -
         2.0 * multiply(f, hilbert(multiply(f, fp), depth));
}

SurfaceProfile K_integral(const SurfaceProfile& f, double depth, int quad_points) {
  if (!(depth > 0.0)) throw ParameterError("depth must be > 0");
  if (quad_points < 16 || quad_points % 2 != 0) {
    throw ParameterError("singular quadrature needs an even node count >= 16");
  }
  const int deg = std::max(f.degree(), 1);
  const Grid out_grid = Grid::for_degree(3 * deg);
  const int n = out_grid.n_points();
  const std::vector<double> fx = f.values_on(out_grid);

  // Node angle tables, symmetric halves so shifts stay numerically clean.
  std::vector<double> tc(n), ts(n);
  for (int r = 0; r <= n / 2; ++r) {
    tc[r] = std::cos(kTwoPi * r / n);
    ts[r] = std::sin(kTwoPi * r / n);
  }
  for (int r = n / 2 + 1; r < n; ++r) {
    tc[r] = tc[n - r];
    ts[r] = -ts[n - r];
  }

  const auto& ac = f.cos_coeffs();
  const auto& as = f.sin_coeffs();
  const double h = kTwoPi / quad_points;
  std::vector<double> out(n, 0.0), shifted(n);
  for (int i = 0; i < quad_points; ++i) {
    const double u = -kPi + (i + 0.5) * h;  // midpoints never hit u = 0
    const double w = -beta_prime_eval(u, depth).value * h / (6.0 * kPi);
    // f(x - u): rotate coefficients, then synthesize at the output nodes.
    std::fill(shifted.begin(), shifted.end(), ac[0]);
    for (int k = 1; k <= f.degree(); ++k) {
      const double cu = std::cos(k * u), su = std::sin(k * u);
      const double cs = ac[k] * cu - as[k] * su;
      const double ss = ac[k] * su + as[k] * cu;
      if (cs == 0.0 && ss == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        const int r = static_cast<int>((static_cast<long long>(k) * j) % n);
        shifted[j] += cs * tc[r] + ss * ts[r];
      }
    }
    for (int j = 0; j < n; ++j) {
      const double diff = fx[j] - shifted[j];
      out[j] += w * diff * diff * diff;
    }
  }
  return analyze(out_grid, out);
}

namespace {

// Spectral intermediates shared by the surface equation, the kinetic balance,
// and the velocity trace.
struct Spectra {
  SurfaceProfile etap, He, Hee, eta2;
  double e2;
};

Spectra compute_spectra(const SurfaceProfile& eta, double d) {
  Spectra sp{differentiate(eta), {}, {}, {}, 0.0};
  sp.He = hilbert(sp.etap, d);
  sp.Hee = hilbert(multiply(eta, sp.etap), d);
  sp.eta2 = multiply(eta, eta);
  sp.e2 = product_mean(eta, eta);
  return sp;
}

SurfaceProfile psi_from(const SurfaceProfile& eta, const Spectra& sp, const PhysicalParams& pp) {
  return pp.m / pp.d + pp.gamma / (2.0 * pp.d) * sp.e2 + pp.gamma * sp.Hee -
         pp.gamma * (eta + multiply(eta, sp.He));
}

SurfaceProfile jacobian_from(const Spectra& sp) {
  const SurfaceProfile one_He = 1.0 + sp.He;
  return multiply(sp.etap, sp.etap) + multiply(one_He, one_He);
}

SurfaceProfile babenko_from(const SurfaceProfile& eta, const Spectra& sp,
                            const PhysicalParams& pp) {
  if (std::abs(eta.mean() - pp.d) > 1e-9 * std::max(1.0, pp.d)) {
    throw ParameterError("surface equation requires mean(eta) = d; mean is " +
                         std::to_string(eta.mean()));
  }
  const double g = pp.g, d = pp.d, gam = pp.gamma, m = pp.m, Q = pp.Q;
  const SurfaceProfile coef = Q - 2.0 * g * eta - gam * gam * sp.eta2;
  const SurfaceProfile lhs = hilbert(multiply(coef, sp.etap), d) + multiply(coef, sp.He) +
                             2.0 * gam * gam * multiply(eta, sp.Hee);
  const SurfaceProfile rhs = (-2.0 * m * gam / d - gam * gam * sp.e2 / d + 2.0 * g) * eta +
                             gam * gam * sp.eta2 +
                             (2.0 * gam * m - 2.0 * g * d - 2.0 * g * product_mean(eta, sp.He));
  return lhs - rhs;
}

double averages_from(const SurfaceProfile& eta, const Spectra& sp, const PhysicalParams& pp) {
  const SurfaceProfile psi = psi_from(eta, sp, pp);
  const SurfaceProfile jac = jacobian_from(sp);
  return product_mean(psi, psi) - product_mean(pp.Q - 2.0 * pp.g * eta, jac);
}

}  // namespace

SurfaceProfile psi_y_trace(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  return psi_from(eta, compute_spectra(eta, pp.d), pp);
}

SurfaceProfile dynamic_residual(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  const Spectra sp = compute_spectra(eta, pp.d);
  const SurfaceProfile psi = psi_from(eta, sp, pp);
  return multiply(psi, psi) - multiply(pp.Q - 2.0 * pp.g * eta, jacobian_from(sp));
}

SurfaceProfile babenko_residual(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  return babenko_from(eta, compute_spectra(eta, pp.d), pp);
}

double averages_residual(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  return averages_from(eta, compute_spectra(eta, pp.d), pp);
}

SystemResidual system_residual(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  const Spectra sp = compute_spectra(eta, pp.d);
  return {babenko_from(eta, sp, pp), averages_from(eta, sp, pp)};
}

SurfaceProfile f_equation_residual(const SurfaceProfile& f, const PhysicalParams& pp) {
  pp.validate();
  const double gg = pp.gamma * pp.gamma / (2.0 * pp.g);
  const double c1 = compute_c1(f, pp);
  const double b = compute_b(f, pp);
  const SurfaceProfile fp = differentiate(f);
  const SurfaceProfile Hfp = hilbert(fp, pp.d);
  const SurfaceProfile Hffp = hilbert(multiply(f, fp), pp.d);
  return f + c1 * f - gg * multiply(f, f) - multiply(f, Hfp) - Hffp +
         gg * K_spectral(f, pp.d) - b;
}

namespace {

// Admissibility and stagnation diagnostics live on a 4x synthesis grid to
// catch inter-node violations.
Grid fine_grid_for(const SurfaceProfile& p) {
  return Grid(4 * std::max(p.grid().n_points(), 2 * (p.degree() + 1)));
}

}  // namespace

ResidualReport residual_report(const SurfaceProfile& eta, const PhysicalParams& pp) {
  pp.validate();
  ResidualReport rep{};
  rep.dynamic_res = dynamic_residual(eta, pp).sup_abs();
  rep.babenko_res = babenko_residual(eta, pp).sup_abs();
  rep.averages_res = std::abs(averages_residual(eta, pp));
  rep.f_eq_res = f_equation_residual(eta_to_f(eta, pp), pp).sup_abs();

  const Grid fine = fine_grid_for(eta);
  const SurfaceProfile etap = differentiate(eta);
  const std::vector<double> ev = eta.values_on(fine);
  const std::vector<double> epv = etap.values_on(fine);
  const std::vector<double> hev = hilbert(etap, pp.d).values_on(fine);
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < fine.n_points(); ++j) {
    const double speed2 = epv[j] * epv[j] + (1.0 + hev[j]) * (1.0 + hev[j]);
    margin = std::min(margin, (pp.Q - 2.0 * pp.g * ev[j]) * speed2);
  }
  rep.no_stagnation_margin = margin;

  // Strict monotone decrease between crest and trough; a constant profile
  // passes degenerately (no interior arc to test).
  bool nodal = true;
  if (eta.degree() > 0) {
    for (int j = 1; j < fine.n_points() / 2; ++j) {
      if (!(epv[j] < 0.0)) {
        nodal = false;
        break;
      }
    }
  }
  rep.nodal_ok = nodal;
  return rep;
}

SectionThreeReport section_three_report(const SurfaceProfile& f, const PhysicalParams& pp) {
  pp.validate();
  const double d = pp.d;
  const double z = f.crest();   // f at x = 0 (surface crest)
  const double p = f.trough();  // f at x = pi (surface trough)
  const double A = p - z;

  const SurfaceProfile fp = differentiate(f);
  const SurfaceProfile Hfp = hilbert(fp, d);
  const SurfaceProfile Hffp = hilbert(multiply(f, fp), d);
  const SurfaceProfile quad = multiply(f, Hfp) + Hffp;   // f H f' + H(f f')
  const SurfaceProfile comm = multiply(f, Hfp) - Hffp;   // f H f' - H(f f')
  const SurfaceProfile Kf = K_spectral(f, d);

  SectionThreeReport rep{};
  rep.amplitude = A;
  rep.V_val = quad.trough() - quad.crest();

  rep.Bpi = -1.0 * multiply(p - f, 1.5 * p + 0.5 * f);
  rep.B0 = -1.0 * multiply(f - z, 1.5 * z + 0.5 * f);
  rep.vbb_defect = std::abs(rep.V_val - hilbert_prime(rep.Bpi, d).trough() -
                            hilbert_prime(rep.B0, d).crest());

  rep.Spi = (1.0 / 6.0) * multiply(multiply(p - f, p - f), (3.0 * z - p) - 2.0 * f);
  rep.S0 = (1.0 / 6.0) * multiply(multiply(f - z, f - z), 2.0 * f + (z - 3.0 * p));
  const double comm_sum = comm.trough() + comm.crest();
  const double cubic_side = -(Kf.trough() - Kf.crest()) + A * comm_sum;
  rep.whs_defect = std::abs(cubic_side - hilbert_prime(rep.Spi, d).trough() -
                            hilbert_prime(rep.S0, d).crest());

  const double gg = pp.gamma * pp.gamma / (2.0 * pp.g);
  rep.W_val = gg * cubic_side;
  rep.R_val = rep.V_val + rep.W_val;
  rep.L_val = A * (1.0 + compute_c1(f, pp)) - gg * (p * p - z * z) + gg * A * comm_sum;
  return rep;
}

}  // namespace vorwave
