#ifndef VORWAVE_SOLVER_HPP
#define VORWAVE_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "vorwave/formulation.hpp"
#include "vorwave/profile.hpp"

namespace vorwave {

struct ContinuationConfig {
  double step = 0.02;      // initial arclength step
  double step_min = 1e-6;  // below this the branch ends as step_collapse
  double step_max = 0.05;
  double newton_tol = 1e-12;      // sup-norm target on the solved system
  int newton_max_iters = 25;
  int max_points = 400;
  double residual_accept = 1e-10;  // full-profile residual gate per accepted point
  double norm_blowup = 1e3;        // threshold on max(|eta| + |eta'| + |eta''|)
  double flux_energy_blowup = 1e4; // threshold on |m| + Q
  double stagnation_ratio = 1e-3;  // stop when min(Q - 2 g eta) < ratio * Q
  void validate() const;
};

enum class StopKind {
  norm_blowup,
  flux_energy_blowup,
  stagnation_approach,
  self_intersection,
  max_points,
  step_collapse,
};

const char* to_string(StopKind kind);

struct StoppingReason {
  StopKind kind;
  std::string evidence;
};

struct BranchPoint {
  PhysicalParams params{};
  SurfaceProfile eta;
  double arclength_s = 0.0;
  double amplitude = 0.0;    // eta(0) - eta(pi)
  double slope_N = 0.0;      // max |eta'| on the fine grid
  double convexity_M = 0.0;  // max |eta''| on the fine grid
  ResidualReport residuals{};
};

struct BifurcationPoint {
  double m_star;
  double Q_star;
  int mode;          // dominant Fourier mode of the Jacobian kernel vector
  double sigma_min;  // smallest / largest singular value at m_star
  double sigma_max;
};

struct BranchResult {
  std::vector<BranchPoint> points;
  StoppingReason stop;
};

enum class FreeParam { Q, m };

// Bernoulli constant making the flat surface eta = d an exact solution.
PhysicalParams laminar_state(double g, double d, double gamma, double m);

// Full diagnostics for a state; arclength is carried through unchanged.
BranchPoint make_branch_point(const PhysicalParams& pp, const SurfaceProfile& eta,
                              double arclength_s);

// Scan the laminar family in m < 0 for the first singular point of the
// discretized system restricted to even zero-mean perturbations, keeping only
// crossings with negative surface trace velocity.  The scan probe uses
// centered differences; the returned singular pair comes from an SVD of the
// full mode-block Jacobian at the located flux.
BifurcationPoint find_bifurcation(double g, double d, double gamma,
                                  const Grid& grid = Grid(128));

// Newton iteration on cosine modes 1..n_modes-1 of eta (mean pinned to d)
// plus exactly one designated free scalar.  Forward-difference Jacobian.
BranchPoint newton_solve(const BranchPoint& initial, const std::vector<FreeParam>& free_params,
                         const ContinuationConfig& config);

// First triggered stopping alternative for an accepted point, if any.
std::optional<StoppingReason> detect_termination(const BranchPoint& point,
                                                 const std::vector<BranchPoint>& history,
                                                 const ContinuationConfig& config);

// Pseudo-arclength continuation in (eta modes, Q, m) from the bifurcation
// point located by find_bifurcation.  The laminar bifurcation point itself is
// emitted as point 0.
BranchResult continue_branch(double g, double d, double gamma, const Grid& grid,
                             const ContinuationConfig& config);

}  // namespace vorwave

#endif
