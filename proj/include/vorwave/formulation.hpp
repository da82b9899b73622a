#ifndef VORWAVE_FORMULATION_HPP
#define VORWAVE_FORMULATION_HPP

#include "vorwave/profile.hpp"

namespace vorwave {

// Physical state of one wave problem.  m is the relative mass flux (negative
// in the frame where the wave travels left to right), Q the Bernoulli head.
struct PhysicalParams {
  double g;      // gravity, > 0
  double d;      // conformal mean depth, > 0
  double gamma;  // constant vorticity
  double m;      // flux, < 0
  double Q;      // Bernoulli constant, > 0
  void validate() const;
};

struct ResidualReport {
  double dynamic_res;           // sup |pointwise dynamic equation residual|
  double babenko_res;           // sup |nonlocal surface equation residual|
  double averages_res;          // |mean kinetic-balance residual|
  double f_eq_res;              // sup |flipped-unknown equation residual|
  double no_stagnation_margin;  // min over nodes of (Q - 2 g eta) * |surface speed|^2 factor
  bool nodal_ok;                // eta' < 0 strictly on (0, pi) at the fine nodes
};

struct SectionThreeReport {
  double L_val;  // crest-trough difference, left split
  double R_val;  // crest-trough difference, right split (= V + W)
  double V_val;  // quadratic transform difference
  double W_val;  // vorticity cubic correction
  SurfaceProfile Bpi, B0;  // quadratic auxiliary profiles, each <= 0
  SurfaceProfile Spi, S0;  // cubic auxiliary profiles
  double amplitude;
  double vbb_defect;  // | V - H'B^pi(pi) - H'B^0(0) |
  double whs_defect;  // | (cubic side) - H'S^pi(pi) - H'S^0(0) |
};

// Change of unknown between the surface elevation eta (mean d) and
// f = Q/(2g) - eta (positive, increasing crest-to-trough on (0, pi)).
SurfaceProfile eta_to_f(const SurfaceProfile& eta, const PhysicalParams& pp);
SurfaceProfile f_to_eta(const SurfaceProfile& f, const PhysicalParams& pp);

// Zeroth-order coefficients of the flipped-unknown equation.
double compute_c1(const SurfaceProfile& f, const PhysicalParams& pp);
double compute_b(const SurfaceProfile& f, const PhysicalParams& pp);

// Cubic commutator K f = f^2 H f' + H(f^2 f') - 2 f H(f f'), two routes:
// exact coefficient arithmetic, and singular-integral quadrature against the
// kernel derivative.  K is invariant under f -> f + const.
SurfaceProfile K_spectral(const SurfaceProfile& f, double depth);
SurfaceProfile K_integral(const SurfaceProfile& f, double depth, int quad_points = 2048);

// Vertical velocity trace at the surface in conformal variables.
SurfaceProfile psi_y_trace(const SurfaceProfile& eta, const PhysicalParams& pp);

// Pointwise dynamic (Bernoulli) residual: psi_y^2 - (Q - 2 g eta) J, with J
// the conformal surface Jacobian.
SurfaceProfile dynamic_residual(const SurfaceProfile& eta, const PhysicalParams& pp);

// Nonlocal surface equation residual; requires mean(eta) = d.
SurfaceProfile babenko_residual(const SurfaceProfile& eta, const PhysicalParams& pp);

// Mean kinetic-balance residual pairing the surface equation.
double averages_residual(const SurfaceProfile& eta, const PhysicalParams& pp);

// Both system residuals from one set of spectral intermediates; this is the
// solver's inner-loop evaluation.
struct SystemResidual {
  SurfaceProfile babenko;
  double averages;
};
SystemResidual system_residual(const SurfaceProfile& eta, const PhysicalParams& pp);

// Flipped-unknown equation residual; equals babenko_residual / (2 g) when
// f = Q/(2g) - eta.
SurfaceProfile f_equation_residual(const SurfaceProfile& f, const PhysicalParams& pp);

ResidualReport residual_report(const SurfaceProfile& eta, const PhysicalParams& pp);

// Crest-trough difference bookkeeping: splits, auxiliary profiles, and the
// two identity defects recorded while assembling them.
SectionThreeReport section_three_report(const SurfaceProfile& f, const PhysicalParams& pp);

}  // namespace vorwave

#endif
