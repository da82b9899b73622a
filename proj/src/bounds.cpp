#include "vorwave/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "vorwave/errors.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/kernel.hpp"

namespace vorwave {

namespace {

// satisfied iff lhs < rhs strictly; margin is signed relative slack.
BoundCondition gate(std::string name, double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return {std::move(name), lhs < rhs, (rhs - lhs) / (scale > 0.0 ? scale : 1.0)};
}

double beta_half_pi(double depth) { return beta_eval(kPi / 2.0, depth).value; }

// T = 1 + |m| gamma / (g d) + gamma^2 Q^2 / (8 d g^3), the bracket the
// smallness gates push below 3.
double envelope_bracket(const PhysicalParams& p) {
  return 1.0 + std::abs(p.m) * p.gamma / (p.g * p.d) +
         p.gamma * p.gamma * p.Q * p.Q / (8.0 * p.d * p.g * p.g * p.g);
}

}  // namespace

const char* to_string(AdverseRoute route) {
  switch (route) {
    case AdverseRoute::slope_N: return "slope_N";
    case AdverseRoute::convexity_M: return "convexity_M";
  }
  return "unknown";
}

const char* to_string(BoundRoute route) {
  switch (route) {
    case BoundRoute::favorable: return "favorable";
    case BoundRoute::adverse_quadratic: return "adverse_quadratic";
    case BoundRoute::adverse_quartic: return "adverse_quartic";
    case BoundRoute::universal_smallness: return "universal_smallness";
  }
  return "unknown";
}

double favorable_bound(double g, double d, double gamma) {
  if (!(g > 0.0) || !(d > 0.0)) throw ParameterError("favorable_bound needs g > 0, d > 0");
  if (gamma > 0.0) {
    throw ParameterError("favorable_bound covers gamma <= 0 only; use the adverse route");
  }
  if (gamma == 0.0) return 2.0 * d;
  return std::min(2.0 * d, std::sqrt(12.0 * g * d) / std::abs(gamma));
}

AdverseCoefficients adverse_DEF(const PhysicalParams& params, double f2_avg, double cap,
                                AdverseRoute route) {
  params.validate();
  if (!(params.gamma > 0.0)) {
    throw ParameterError("adverse coefficients require gamma > 0");
  }
  if (!(cap >= 0.0)) throw ParameterError("slope/convexity cap must be >= 0");
  const double g = params.g, d = params.d, gamma = params.gamma;
  const double f2_sup = params.Q * params.Q / (4.0 * g * g);
  if (!(f2_avg >= 0.0 && f2_avg < f2_sup)) {
    throw ParameterError("f2_avg must lie in [0, Q^2/(4 g^2))");
  }
  const double c = 1.0 / d + 0.5;
  const double beta = beta_half_pi(d);
  AdverseCoefficients co;
  co.route = route;
  co.D = (route == AdverseRoute::slope_N ? 4.0 * cap : 4.0 * std::sqrt(cap)) / (kPi * c);
  co.E = 3.0 / (2.0 * c) + 3.0 * g * beta / (2.0 * kPi * gamma * gamma * c);
  co.F = (3.0 * g / c) * (1.0 / (gamma * gamma) - params.m / (gamma * g * d) +
                          (f2_sup - f2_avg) / (2.0 * d * g));
  return co;
}

BoundReport adverse_quadratic_bound(const AdverseCoefficients& coeffs) {
  if (coeffs.route != AdverseRoute::slope_N) {
    throw ParameterError("quadratic bound takes slope-route coefficients");
  }
  const double gap = coeffs.E - coeffs.D;
  const double disc = gap * gap - 4.0 * coeffs.F;
  BoundReport rep;
  rep.route = BoundRoute::adverse_quadratic;
  rep.conditions.push_back(gate("E_above_D", coeffs.D, coeffs.E));
  rep.conditions.push_back(gate("discriminant_positive", 4.0 * coeffs.F, gap * gap));
  rep.applicable = rep.conditions[0].satisfied && rep.conditions[1].satisfied;
  if (rep.applicable) rep.bound_value = (gap - std::sqrt(disc)) / 2.0;
  return rep;
}

BoundReport smallness_N(const PhysicalParams& params, double slope_cap) {
  params.validate();
  if (!(slope_cap >= 0.0)) throw ParameterError("slope cap must be >= 0");
  const double g = params.g, d = params.d, gamma = params.gamma;
  const double beta = beta_half_pi(d);
  const double c = 1.0 / d + 0.5;
  BoundReport rep;
  rep.route = BoundRoute::universal_smallness;
  rep.conditions.push_back(gate("adverse_vorticity", 0.0, gamma));
  rep.conditions.push_back(gate("vorticity_below_gravity_flux_ratio", gamma,
                                g * d / std::abs(params.m)));
  rep.conditions.push_back(gate("vorticity_sq_below_depth_gravity", gamma * gamma,
                                8.0 * d * g * g * g / (params.Q * params.Q)));
  rep.conditions.push_back(gate("slope_weighted_vorticity", slope_cap * gamma * gamma,
                                beta * g / 8.0));
  rep.conditions.push_back(gate("vorticity_sq_below_kernel_floor", gamma * gamma,
                                g * beta * beta / (77.0 * kPi * kPi * c)));
  rep.applicable = true;
  for (const auto& cnd : rep.conditions) rep.applicable = rep.applicable && cnd.satisfied;
  if (rep.applicable) rep.bound_value = 12.0 * kPi / beta;
  rep.envelope = 12.0 * kPi / kBetaHalfPiFloor;  // depth-free companion constant
  return rep;
}

double quartic_P(double y, const AdverseCoefficients& coeffs) {
  if (coeffs.route != AdverseRoute::convexity_M) {
    throw ParameterError("quartic probe takes convexity-route coefficients");
  }
  const double y2 = y * y;
  return y2 * y2 + coeffs.D * y2 * y - coeffs.E * y2 + coeffs.F;
}

BoundReport adverse_quartic_bound(const PhysicalParams& params, double convexity_cap,
                                  double epsilon, double f2_avg) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  const AdverseCoefficients co =
      adverse_DEF(params, f2_avg, convexity_cap, AdverseRoute::convexity_M);
  const double A1 = (1.0 + epsilon) * co.F / co.E;
  const double p_probe = quartic_P(std::sqrt(A1), co);
  BoundReport rep;
  rep.route = BoundRoute::adverse_quartic;
  // margin relative to the constant term, which sets the polynomial's scale
  rep.conditions.push_back(
      BoundCondition{"quartic_negative_at_probe", p_probe < 0.0, -p_probe / co.F});
  rep.applicable = p_probe < 0.0;
  if (rep.applicable) {
    rep.bound_value = A1;
    rep.envelope = 2.0 * (1.0 + epsilon) * kPi * envelope_bracket(params) /
                   beta_half_pi(params.d);
  }
  return rep;
}

BoundReport smallness_M(const PhysicalParams& params, double convexity_cap) {
  params.validate();
  if (!(convexity_cap >= 0.0)) throw ParameterError("convexity cap must be >= 0");
  const double g = params.g, d = params.d, gamma = params.gamma;
  const double beta = beta_half_pi(d);
  const double c = 1.0 / d + 0.5;
  const double ratio = beta / (12.0 * kPi);
  BoundReport rep;
  rep.route = BoundRoute::universal_smallness;
  rep.conditions.push_back(gate("adverse_vorticity", 0.0, gamma));
  rep.conditions.push_back(gate("vorticity_below_gravity_flux_ratio", gamma,
                                g * d / std::abs(params.m)));
  rep.conditions.push_back(gate("vorticity_sq_below_depth_gravity", gamma * gamma,
                                8.0 * d * g * g * g / (params.Q * params.Q)));
  rep.conditions.push_back(gate("convexity_weighted_vorticity",
                                std::sqrt(convexity_cap) * gamma * gamma,
                                (kPi * g / 4.0) * ratio * std::sqrt(ratio)));
  rep.conditions.push_back(gate("vorticity_sq_below_kernel_quartic", gamma * gamma,
                                (2.0 * g / c) * ratio * ratio));
  rep.applicable = true;
  for (const auto& cnd : rep.conditions) rep.applicable = rep.applicable && cnd.satisfied;
  if (rep.applicable) rep.bound_value = 12.0 * kPi / beta;
  rep.envelope = 12.0 * kPi / kBetaHalfPiFloor;
  return rep;
}

}  // namespace vorwave
