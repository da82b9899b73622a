#include "vorwave/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "vorwave/errors.hpp"
#include "vorwave/spectral.hpp"

namespace vorwave {

namespace {

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

double fine_sup_abs(const SurfaceProfile& p) {
  const Grid fine(4 * std::max(p.grid().n_points(), 2 * (p.degree() + 1)));
  double s = 0.0;
  for (double v : p.values_on(fine)) s = std::max(s, std::abs(v));
  return s;
}

// Minimum of Q - 2 g eta on the 4x synthesis grid (positivity of f).
double min_head(const SurfaceProfile& eta, const PhysicalParams& pp) {
  const Grid fine(4 * eta.grid().n_points());
  double lo = std::numeric_limits<double>::infinity();
  for (double v : eta.values_on(fine)) lo = std::min(lo, pp.Q - 2.0 * pp.g * v);
  return lo;
}

}  // namespace

void ContinuationConfig::validate() const {
  if (!(step_min > 0.0) || !(step_min <= step) || !(step <= step_max)) {
    throw ParameterError("continuation requires 0 < step_min <= step <= step_max");
  }
  if (!(newton_tol >= 1e-13)) {
    throw ParameterError("newton_tol must be >= 1e-13 (discretization noise floor)");
  }
  if (newton_max_iters < 1) throw ParameterError("newton_max_iters must be >= 1");
  if (max_points < 1) throw ParameterError("max_points must be >= 1");
  if (!(residual_accept >= newton_tol)) {
    throw ParameterError("residual_accept must be >= newton_tol");
  }
  if (!(norm_blowup > 0.0) || !(flux_energy_blowup > 0.0)) {
    throw ParameterError("blowup thresholds must be > 0");
  }
  if (!(stagnation_ratio > 0.0 && stagnation_ratio < 1.0)) {
    throw ParameterError("stagnation_ratio must be in (0, 1)");
  }
}

const char* to_string(StopKind kind) {
  switch (kind) {
    case StopKind::norm_blowup: return "norm_blowup";
    case StopKind::flux_energy_blowup: return "flux_energy_blowup";
    case StopKind::stagnation_approach: return "stagnation_approach";
    case StopKind::self_intersection: return "self_intersection";
    case StopKind::max_points: return "max_points";
    case StopKind::step_collapse: return "step_collapse";
  }
  return "unknown";
}

PhysicalParams laminar_state(double g, double d, double gamma, double m) {
  if (!(g > 0.0) || !(d > 0.0)) throw ParameterError("laminar state needs g > 0 and d > 0");
  if (!(m < 0.0)) throw ParameterError("flux must be < 0");
  const double mu = m / d - gamma * d / 2.0;
  PhysicalParams pp{g, d, gamma, m, mu * mu + 2.0 * g * d};
  pp.validate();
  return pp;
}

BranchPoint make_branch_point(const PhysicalParams& pp, const SurfaceProfile& eta,
                              double arclength_s) {
  pp.validate();
  BranchPoint bp;
  bp.params = pp;
  bp.eta = eta;
  bp.arclength_s = arclength_s;
  bp.amplitude = eta.crest() - eta.trough();
  const SurfaceProfile etap = differentiate(eta);
  bp.slope_N = fine_sup_abs(etap);
  bp.convexity_M = fine_sup_abs(differentiate(etap));
  bp.residuals = residual_report(eta, pp);
  return bp;
}

namespace {

// Discretized system: unknown cosine modes 1..n_modes of eta (mode 0 pinned
// to d), equations = surface-equation modes 1..n_modes plus kinetic balance.
struct SystemShape {
  Grid grid;
  int n_modes;
  double g, d, gamma;
};

SurfaceProfile eta_from_modes(const SystemShape& sh, const double* a) {
  std::vector<double> cc(sh.grid.n_modes() + 1, 0.0);
  cc[0] = sh.d;
  for (int k = 1; k <= sh.n_modes; ++k) cc[k] = a[k - 1];
  return SurfaceProfile::from_cos(sh.grid, std::move(cc));
}

Eigen::VectorXd system_rows(const SystemShape& sh, const double* a, double Q, double m) {
  const PhysicalParams pp{sh.g, sh.d, sh.gamma, m, Q};
  const SurfaceProfile eta = eta_from_modes(sh, a);
  const SystemResidual sys = system_residual(eta, pp);
  Eigen::VectorXd r(sh.n_modes + 1);
  for (int k = 1; k <= sh.n_modes; ++k) r[k - 1] = sys.babenko.cos_coeffs()[k];
  r[sh.n_modes] = sys.averages;
  return r;
}

struct NewtonResult {
  Eigen::VectorXd x;
  int iters = 0;
  double last_res = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Plain Newton with a forward-difference Jacobian, step 1e-7 * (1 + |x_j|).
template <typename Fn>
NewtonResult newton_iterate(Fn&& F, Eigen::VectorXd x0, double tol, int max_iters) {
  const int n = static_cast<int>(x0.size());
  NewtonResult out;
  out.x = std::move(x0);
  Eigen::VectorXd r = F(out.x);
  out.last_res = r.cwiseAbs().maxCoeff();
  if (out.last_res < tol) {
    out.converged = true;
    return out;
  }
  Eigen::MatrixXd J(n, n);
  for (int it = 1; it <= max_iters; ++it) {
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * (1.0 + std::abs(out.x[j]));
      Eigen::VectorXd xp = out.x;
      xp[j] += h;
      J.col(j) = (F(xp) - r) / h;
    }
    out.x -= J.partialPivLu().solve(r);
    r = F(out.x);
    out.iters = it;
    out.last_res = r.cwiseAbs().maxCoeff();
    if (out.last_res < tol) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

BifurcationPoint find_bifurcation(double g, double d, double gamma, const Grid& grid) {
  if (!(g > 0.0) || !(d > 0.0)) throw ParameterError("find_bifurcation needs g > 0, d > 0");
  const double h = 1e-6;

  // Centered-difference probe of the mode-1 diagonal of the system Jacobian
  // at the laminar state; forward differences would leave O(sqrt(eps)) noise
  // that swamps the singular-value contract at the crossing.
  auto probe = [&](double m) {
    const PhysicalParams pp = laminar_state(g, d, gamma, m);
    std::vector<double> cp(grid.n_modes() + 1, 0.0);
    cp[0] = d;
    cp[1] = h;
    std::vector<double> cm = cp;
    cm[1] = -h;
    const double rp =
        babenko_residual(SurfaceProfile::from_cos(grid, std::move(cp)), pp).cos_coeffs()[1];
    const double rm =
        babenko_residual(SurfaceProfile::from_cos(grid, std::move(cm)), pp).cos_coeffs()[1];
    return (rp - rm) / (2.0 * h);
  };
  const auto mu_of = [&](double m) { return m / d - gamma * d / 2.0; };

  std::ostringstream record;
  double m_star = 0.0;
  bool found = false;
  double a_m = -1e-3;
  double phi_a = probe(a_m);
  record << "m=" << num(a_m) << " probe=" << num(phi_a) << "\n";
  while (!found && std::abs(a_m) < 1e12) {
    const double b_m = 2.0 * a_m;
    const double phi_b = probe(b_m);
    record << "m=" << num(b_m) << " probe=" << num(phi_b) << "\n";
    if ((phi_a < 0.0) != (phi_b < 0.0)) {
      double lo = b_m, hi = a_m;  // lo < hi < 0
      double phi_lo = phi_b;
      for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::abs(lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double phi_mid = probe(mid);
        if ((phi_mid < 0.0) == (phi_lo < 0.0)) {
          lo = mid;
          phi_lo = phi_mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      // Keep only crossings with negative surface trace velocity; the mirror
      // root belongs to the opposite-signed laminar family.
      if (mu_of(root) < 0.0) {
        m_star = root;
        found = true;
        break;
      }
      record << "rejected crossing m=" << num(root) << " (trace velocity "
             << num(mu_of(root)) << " >= 0)\n";
    }
    a_m = b_m;
    phi_a = phi_b;
  }
  if (!found) {
    throw ScanError("no admissible singular crossing of the laminar family in scan window",
                    record.str());
  }

  // Full mode-block Jacobian at the located flux, centered differences.
  const PhysicalParams pps = laminar_state(g, d, gamma, m_star);
  const int K = grid.n_modes() - 1;
  Eigen::MatrixXd J(K, K);
  for (int k = 1; k <= K; ++k) {
    std::vector<double> cp(grid.n_modes() + 1, 0.0);
    cp[0] = d;
    cp[k] = h;
    std::vector<double> cm = cp;
    cm[k] = -h;
    const SurfaceProfile rp =
        babenko_residual(SurfaceProfile::from_cos(grid, std::move(cp)), pps);
    const SurfaceProfile rm =
        babenko_residual(SurfaceProfile::from_cos(grid, std::move(cm)), pps);
    for (int i = 1; i <= K; ++i) {
      J(i - 1, k - 1) = (rp.cos_coeffs()[i] - rm.cos_coeffs()[i]) / (2.0 * h);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::VectorXd kernel = svd.matrixV().col(K - 1);
  int mode = 1;
  double best = 0.0;
  for (int i = 0; i < K; ++i) {
    if (std::abs(kernel[i]) > best) {
      best = std::abs(kernel[i]);
      mode = i + 1;
    }
  }
  return {m_star, pps.Q, mode, sv[K - 1], sv[0]};
}

BranchPoint newton_solve(const BranchPoint& initial, const std::vector<FreeParam>& free_params,
                         const ContinuationConfig& config) {
  config.validate();
  if (free_params.size() != 1) {
    throw ParameterError(
        "newton_solve needs exactly one free scalar (Q or m): the discretized "
        "system has n_modes+1 equations for n_modes mode unknowns");
  }
  if (initial.eta.parity() != Parity::even) {
    throw ParameterError("solver state must lie in the even subspace");
  }
  const FreeParam fp = free_params[0];
  const Grid grid = initial.eta.grid();
  const SystemShape sh{grid, grid.n_modes() - 1, initial.params.g, initial.params.d,
                       initial.params.gamma};
  Eigen::VectorXd x(sh.n_modes + 1);
  for (int k = 1; k <= sh.n_modes; ++k) x[k - 1] = initial.eta.cos_coeffs()[k];
  x[sh.n_modes] = fp == FreeParam::Q ? initial.params.Q : initial.params.m;
  const double fixed_Q = initial.params.Q;
  const double fixed_m = initial.params.m;

  auto F = [&](const Eigen::VectorXd& y) {
    const double Q = fp == FreeParam::Q ? y[sh.n_modes] : fixed_Q;
    const double m = fp == FreeParam::m ? y[sh.n_modes] : fixed_m;
    return system_rows(sh, y.data(), Q, m);
  };
  const NewtonResult nr = newton_iterate(F, std::move(x), config.newton_tol,
                                         config.newton_max_iters);
  if (!nr.converged) {
    throw ConvergenceError("Newton stalled after " + std::to_string(nr.iters) +
                               " iterations at residual " + num(nr.last_res),
                           nr.last_res);
  }
  PhysicalParams pp = initial.params;
  if (fp == FreeParam::Q) pp.Q = nr.x[sh.n_modes];
  if (fp == FreeParam::m) pp.m = nr.x[sh.n_modes];
  pp.validate();
  const SurfaceProfile eta = eta_from_modes(sh, nr.x.data());
  if (!(min_head(eta, pp) > 0.0)) {
    throw DegeneracyError("admissibility lost: Q - 2 g eta reached " +
                          num(min_head(eta, pp)));
  }
  return make_branch_point(pp, eta, initial.arclength_s);
}

std::optional<StoppingReason> detect_termination(const BranchPoint& point,
                                                 const std::vector<BranchPoint>& history,
                                                 const ContinuationConfig& config) {
  config.validate();
  (void)history;  // thresholds are pointwise; the history is kept for callers
  const SurfaceProfile& eta = point.eta;
  const PhysicalParams& pp = point.params;

  const Grid fine(4 * eta.grid().n_points());
  const SurfaceProfile etap = differentiate(eta);
  const std::vector<double> ev = eta.values_on(fine);
  const std::vector<double> epv = etap.values_on(fine);
  const std::vector<double> eppv = differentiate(etap).values_on(fine);
  double c2 = 0.0;
  for (int j = 0; j < fine.n_points(); ++j) {
    c2 = std::max(c2, std::abs(ev[j]) + std::abs(epv[j]) + std::abs(eppv[j]));
  }
  if (c2 > config.norm_blowup) {
    return StoppingReason{StopKind::norm_blowup,
                          "max(|eta|+|eta'|+|eta''|) = " + num(c2) + " > " +
                              num(config.norm_blowup)};
  }
  if (std::abs(pp.m) + pp.Q > config.flux_energy_blowup) {
    return StoppingReason{StopKind::flux_energy_blowup,
                          "|m| + Q = " + num(std::abs(pp.m) + pp.Q) + " > " +
                              num(config.flux_energy_blowup)};
  }
  double head = std::numeric_limits<double>::infinity();
  for (double v : ev) head = std::min(head, pp.Q - 2.0 * pp.g * v);
  if (head < config.stagnation_ratio * pp.Q) {
    return StoppingReason{StopKind::stagnation_approach,
                          "min(Q - 2 g eta) = " + num(head) + " < " +
                              num(config.stagnation_ratio) + " * Q = " +
                              num(config.stagnation_ratio * pp.Q)};
  }

  // Self-intersection: only a curve with somewhere non-increasing horizontal
  // coordinate can fail injectivity, so gate the quadratic segment test.
  const Grid poly(8 * eta.grid().n_points());
  const std::vector<double> hv = hilbert(eta - eta.mean(), pp.d).values_on(poly);
  const std::vector<double> yv = eta.values_on(poly);
  const std::vector<double> xipv = (1.0 + hilbert(etap, pp.d)).values_on(poly);
  double xi_min = std::numeric_limits<double>::infinity();
  for (double v : xipv) xi_min = std::min(xi_min, v);
  if (xi_min <= 0.0) {
    // Crest-centered polyline extended over two periods, x in [-pi, 3*pi).
    // The curve is 2*pi-periodic in xi, so a crossing between the window's
    // two ends (the first one an overturning symmetric wave develops, at the
    // trough) only shows up against the translated copy.
    const int np = poly.n_points();
    std::vector<double> px(2 * np), py(2 * np);
    for (int i = 0; i < 2 * np; ++i) {
      const int j = (i + np / 2) % np;
      const double x = -kPi + i * (kTwoPi / np);
      px[i] = x + hv[j];
      py[i] = yv[j];
    }
    auto orient = [&](int a, int b, int c) {
      return (px[b] - px[a]) * (py[c] - py[a]) - (py[b] - py[a]) * (px[c] - px[a]);
    };
    // First segment in the base period, partner anywhere up to one period
    // ahead; j = i + np - 1 is adjacent to segment i through the wrap.
    for (int i = 0; i < np; ++i) {
      for (int j = i + 2; j <= i + np - 2; ++j) {
        const double o1 = orient(i, i + 1, j), o2 = orient(i, i + 1, j + 1);
        const double o3 = orient(j, j + 1, i), o4 = orient(j, j + 1, i + 1);
        if (o1 * o2 < 0.0 && o3 * o4 < 0.0) {
          return StoppingReason{
              StopKind::self_intersection,
              "surface polyline segments near x = " + num(-kPi + i * kTwoPi / np) +
                  " and x = " + num(-kPi + j * kTwoPi / np) + " cross (min xi' = " +
                  num(xi_min) + ")"};
        }
      }
    }
  }
  return std::nullopt;
}

BranchResult continue_branch(double g, double d, double gamma, const Grid& grid,
                             const ContinuationConfig& config) {
  config.validate();
  const BifurcationPoint bif = find_bifurcation(g, d, gamma, grid);
  const SystemShape sh{grid, grid.n_modes() - 1, g, d, gamma};
  const int n = sh.n_modes + 2;  // mode unknowns, then Q, then m
  const PhysicalParams pp0 = laminar_state(g, d, gamma, bif.m_star);

  BranchResult out{{}, {StopKind::max_points, ""}};
  out.points.push_back(make_branch_point(pp0, SurfaceProfile::constant(grid, d), 0.0));

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u[n - 2] = pp0.Q;
  u[n - 1] = pp0.m;
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
  t[0] = 1.0;  // into the nontrivial branch, crest-at-zero orientation

  double ds = config.step;
  double s = 0.0;
  while (static_cast<int>(out.points.size()) < config.max_points) {
    bool ok = false;
    std::string failure;
    Eigen::VectorXd x;
    int iters = 0;
    try {
      auto F = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd r(n);
        r.head(n - 1) = system_rows(sh, y.data(), y[n - 2], y[n - 1]);
        r[n - 1] = t.dot(y - u) - ds;
        return r;
      };
      NewtonResult nr =
          newton_iterate(F, (u + ds * t).eval(), config.newton_tol, config.newton_max_iters);
      iters = nr.iters;
      if (nr.converged) {
        x = std::move(nr.x);
        ok = true;
      } else {
        failure = "newton stalled at residual " + num(nr.last_res);
      }
    } catch (const ParameterError& e) {
      failure = std::string("iterate left the admissible parameter region: ") + e.what();
    }

    BranchPoint cand;
    if (ok) {
      const PhysicalParams pp{g, d, gamma, x[n - 1], x[n - 2]};
      const SurfaceProfile eta = eta_from_modes(sh, x.data());
      cand = make_branch_point(pp, eta, s + ds);
      if (cand.residuals.babenko_res > config.residual_accept ||
          cand.residuals.averages_res > config.residual_accept) {
        ok = false;
        failure = "full residual above acceptance gate: babenko " +
                  num(cand.residuals.babenko_res) + ", averages " +
                  num(cand.residuals.averages_res);
      } else if (!cand.residuals.nodal_ok) {
        ok = false;
        failure = "nodal monotonicity violated";
      } else if (!(min_head(eta, pp) > 0.0)) {
        ok = false;
        failure = "admissibility f > 0 lost";
      }
    }

    if (!ok) {
      ds *= 0.5;
      if (ds < config.step_min) {
        out.stop = {StopKind::step_collapse,
                    "step fell below step_min = " + num(config.step_min) +
                        "; last failure: " + failure};
        return out;
      }
      continue;
    }

    s += ds;
    Eigen::VectorXd tn = x - u;
    tn /= tn.norm();
    u = x;
    t = std::move(tn);
    out.points.push_back(std::move(cand));
    if (auto stop = detect_termination(out.points.back(), out.points, config)) {
      out.stop = *stop;
      return out;
    }
    if (iters <= 4) ds = std::min(ds * 1.4, config.step_max);
  }
  out.stop = {StopKind::max_points,
              "accepted " + std::to_string(out.points.size()) + " points"};
  return out;
}

}  // namespace vorwave
