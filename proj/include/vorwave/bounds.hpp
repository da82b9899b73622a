#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorwave/formulation.hpp"

namespace vorwave {

// Closed-form amplitude bounds for the wave branch, split by the sign of the
// vorticity. The favorable route (gamma <= 0) is a single formula; the
// adverse route (gamma > 0) comes in two flavors, a quadratic inequality in
// the amplitude driven by a slope cap N and a quartic inequality in sqrt(A)
// driven by a convexity cap M, each with an explicit smallness criterion
// whose conclusion is a universal constant.

enum class AdverseRoute { slope_N, convexity_M };
enum class BoundRoute { favorable, adverse_quadratic, adverse_quartic, universal_smallness };

const char* to_string(AdverseRoute route);
const char* to_string(BoundRoute route);

// One inequality gate: satisfied iff lhs < rhs strictly; margin is the signed
// relative slack (rhs - lhs) / max(|lhs|, |rhs|), zero exactly at equality.
struct BoundCondition {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;
};

struct AdverseCoefficients {
  double D = 0.0;  // 4*cap/(pi*c) on the slope route, 4*sqrt(cap)/(pi*c) on the convexity route
  double E = 0.0;
  double F = 0.0;
  AdverseRoute route = AdverseRoute::slope_N;
};

struct BoundReport {
  BoundRoute route = BoundRoute::favorable;
  bool applicable = false;
  std::optional<double> bound_value;  // present iff applicable
  // Parameter-only companion: for the quartic route the simplified envelope
  // 2(1+eps)*pi*T/beta(pi/2) (present iff applicable); for the universal
  // corollaries the depth-free constant 12*pi over the kernel floor.
  std::optional<double> envelope;
  std::vector<BoundCondition> conditions;
};

// min{2d, sqrt(12 g d)/|gamma|}; gamma = 0 gives 2d. Throws for gamma > 0.
double favorable_bound(double g, double d, double gamma);

// Coefficients of the adverse inequalities. cap is the slope bound N or the
// convexity bound M depending on route; f2_avg is the mean of f^2 (pass 0
// for the a-priori worst case, which maximizes F). Requires gamma > 0,
// cap >= 0 and 0 <= f2_avg < Q^2/(4 g^2).
AdverseCoefficients adverse_DEF(const PhysicalParams& params, double f2_avg, double cap,
                                AdverseRoute route = AdverseRoute::slope_N);

// Smaller root of A^2 - (E - D) A + F = 0 when E > D and 4F < (E - D)^2.
BoundReport adverse_quadratic_bound(const AdverseCoefficients& coeffs);

// Smallness gates that make the quadratic route conclusive with the
// universal bound 12 pi / beta(pi/2); total in gamma (an adverse_vorticity
// gate leads the list so the report never throws on the wrong sign).
BoundReport smallness_N(const PhysicalParams& params, double slope_cap);

// P(Y) = Y^4 + D_M Y^3 - E Y^2 + F on the convexity route.
double quartic_P(double y, const AdverseCoefficients& coeffs);

// Convexity route: probe Y1 = sqrt((1+eps) F / E); if P(Y1) < 0 the
// amplitude is below (1+eps) F / E and below the simplified envelope.
BoundReport adverse_quartic_bound(const PhysicalParams& params, double convexity_cap,
                                  double epsilon, double f2_avg);

// Smallness gates for the convexity route (eps = 1 internally), same
// universal conclusion as smallness_N.
BoundReport smallness_M(const PhysicalParams& params, double convexity_cap);

}  // namespace vorwave
