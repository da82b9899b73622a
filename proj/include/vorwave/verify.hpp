#pragma once

#include <string>
#include <vector>

#include "vorwave/formulation.hpp"
#include "vorwave/rng.hpp"
#include "vorwave/solver.hpp"

namespace vorwave {

// Numerical audit suite: every supporting inequality and algebraic identity is
// re-evaluated with explicit margins, on solved waves and on synthetic
// admissible profiles (the inequalities hold for any smooth positive even
// profile increasing on (0, pi), not only for solutions).

struct AuditCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<", "<=", ">", ">=", "~" (identity within tol)
  double margin = 0.0;   // signed slack, positive iff pass
  bool pass = false;
  bool degenerate = false;  // both sides vanish (constant profile); the
                            // the hypotheses exclude the case, so it is
                            // classified as a degenerate pass
};

struct AuditReport {
  std::string subject;
  std::vector<AuditCheck> checks;
  bool overall = false;       // conjunction of pass over all checks
  bool inconclusive = false;  // hypotheses unmet, inequality checks skipped
};

// f = c0 + sum a_k (1 - cos kx), rejection-sampled until f > 0 everywhere
// and f' > 0 strictly on the interior of (0, pi).
SurfaceProfile random_admissible_profile(Rng& rng, const Grid& grid, int max_modes = 8);

// Kernel shape: positivity and strict decrease on (0, pi], the quarter-period
// floor (pi - 2)/pi, antisymmetry, the derivative envelope
// -beta'(s) < 1/d + 2/s^2 + 1/2, and the truncation-tail budget.
AuditReport audit_kernel(double depth, int n_samples = 1000);

// Quadratic lower bounds for V = {f H f' + H(f f')} from crest to trough:
// the kernel-floor bound V >= beta(pi/2)/(2 pi) A^2, the maximum-principle
// bound V > A^2/(2 d), and the split-function identities behind them.
AuditReport audit_quadratic_lower(const SurfaceProfile& f, double depth);

// Cubic upper bound for the commutator cascade K f from crest to trough,
// through the intermediate delta-split bound at delta = min(A/N, pi), plus
// the spectral-vs-quadrature route agreement for K itself.
AuditReport audit_cubic_upper(const SurfaceProfile& f, const PhysicalParams& params);

// Identity and sign battery for the crest-to-trough split L = V + W: the
// split-function identities, Hopf positivity of the Dirichlet operator at
// the touch points, the lower bound on R, and (favorable route only,
// gated on gamma <= 0 and a nonpositive vertical velocity trace) L <= A.
AuditReport audit_section_three(const PhysicalParams& params, const BranchPoint& point);

// Crest-to-trough equation on converged points: both sides of the evaluated
// surface equation agree; on adverse points additionally the slope chain
// and the closing quadratic inequality with measured slope and mean f^2.
AuditReport audit_crest_trough(const PhysicalParams& params, const BranchPoint& point);

}  // namespace vorwave
