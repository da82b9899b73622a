#include "vorwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "vorwave/errors.hpp"
#include "vorwave/spectral.hpp"

namespace vorwave {

namespace {

constexpr int kMaxImageTerms = 600;

void require_kernel_args(double depth, double rel_tol) {
  if (!(depth > 0.0)) throw ParameterError("depth must be > 0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ParameterError("kernel rel_tol must be in (0,1)");
}

// Reduce s to (-pi, pi]; 0 is the kernel's non-removable singularity.
double reduce_period(double s) {
  const double r = std::remainder(s, kTwoPi);
  if (r == 0.0) throw SingularityError("kernel evaluated at s = 0 (mod 2*pi)");
  return r;
}

// 1/sinh(u)^2 for u > 0 without overflow at large u.
double csch2(double u) {
  if (u > 350.0) return 0.0;
  const double sh = std::sinh(u);
  return 1.0 / (sh * sh);
}

// 2/(exp(2a) - 1) for a > 0 without overflow.
double two_over_expm1(double a) {
  if (a > 354.0) return 0.0;
  return 2.0 / std::expm1(2.0 * a);
}

}  // namespace

KernelEval beta_eval(double s, double depth, double rel_tol) {
  require_kernel_args(depth, rel_tol);
  const double r = reduce_period(s);
  const double a = std::abs(r);
  const double pref = kPi / depth;
  double acc = 1.0 / std::tanh(kPi * a / (2.0 * depth));
  int n = 1;
  double pair = 0.0;
  for (; n <= kMaxImageTerms; ++n) {
    const double A = kPi * (kTwoPi * n + a) / (2.0 * depth);
    const double B = kPi * (kTwoPi * n - a) / (2.0 * depth);
    pair = two_over_expm1(A) - two_over_expm1(B);
    acc += pair;
    if (std::abs(pair) <= rel_tol * std::abs(acc)) break;
  }
  // Image terms shrink by at least e^{-2 pi^2 / d} per step.
  const double rho = std::exp(-2.0 * kPi * kPi / depth);
  const double tail = pref * std::abs(pair) * rho / (1.0 - rho);
  const double value = -a / depth + pref * acc;
  return {r < 0.0 ? -value : value, n, tail};
}

KernelEval beta_prime_eval(double s, double depth, double rel_tol) {
  require_kernel_args(depth, rel_tol);
  const double a = std::abs(reduce_period(s));
  const double pref = kPi * kPi / (2.0 * depth * depth);
  double acc = csch2(kPi * a / (2.0 * depth));
  int n = 1;
  double pair = 0.0;
  for (; n <= kMaxImageTerms; ++n) {
    pair = csch2(kPi * (kTwoPi * n - a) / (2.0 * depth)) +
           csch2(kPi * (kTwoPi * n + a) / (2.0 * depth));
    acc += pair;
    if (pair <= rel_tol * acc) break;
  }
  const double rho = std::exp(-2.0 * kPi * kPi / depth);
  const double tail = pref * pair * rho / (1.0 - rho);
  return {-(1.0 / depth + pref * acc), n, tail};
}

KernelTable tabulate_kernel(double depth, double s_from, double s_to, int n_samples,
                            double rel_tol) {
  require_kernel_args(depth, rel_tol);
  if (n_samples < 2) throw ParameterError("kernel table needs at least 2 samples");
  if (!(s_from < s_to)) throw ParameterError("kernel table needs s_from < s_to");
  KernelTable table;
  table.depth = depth;
  table.truncation_terms = 0;
  table.tail_bound = 0.0;
  table.samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double s = s_from + (s_to - s_from) * i / (n_samples - 1);
    const KernelEval b = beta_eval(s, depth, rel_tol);
    const KernelEval bp = beta_prime_eval(s, depth, rel_tol);
    table.samples.push_back({s, b.value, bp.value});
    table.truncation_terms = std::max({table.truncation_terms, b.terms, bp.terms});
    // The recorded tail tracks the beta samples, whose scale matches max |beta|;
    // the derivative series follows the same stopping policy but its magnitude
    // grows like 2/s^2 near the puncture, so its tail is audited relative to
    // its own sampled maximum instead of being mixed into this field.
    table.tail_bound = std::max(table.tail_bound, b.tail_bound);
  }
  return table;
}

SurfaceProfile pv_convolve(const SurfaceProfile& p, double depth, int quad_points) {
  if (!(depth > 0.0)) throw ParameterError("depth must be > 0");
  if (quad_points < 16 || quad_points % 2 != 0) {
    throw ParameterError("pv quadrature needs an even node count >= 16, got " +
                         std::to_string(quad_points));
  }
  const int deg = p.degree();
  const int n = p.grid().n_points();
  if (deg == 0) return SurfaceProfile::constant(p.grid(), 0.0);

  // g_k(x) = a_k sin(kx) - b_k cos(kx), precomputed at the output nodes;
  // the folded integrand is p(x-u) - p(x+u) = sum_k 2 sin(ku) g_k(x).
  std::vector<double> gk(static_cast<std::size_t>(deg) * n);
  for (int k = 1; k <= deg; ++k) {
    const double ak = p.cos_coeffs()[k], bk = p.sin_coeffs()[k];
    for (int j = 0; j < n; ++j) {
      const double x = p.grid().node(j);
      gk[static_cast<std::size_t>(k - 1) * n + j] =
          ak * std::sin(k * x) - bk * std::cos(k * x);
    }
  }

  const double h = kTwoPi / quad_points;
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < quad_points / 2; ++i) {
    const double u = (i + 0.5) * h;  // positive midpoint nodes in (0, pi)
    const double bu = beta_eval(u, depth).value;
    for (int k = 1; k <= deg; ++k) {
      const double w = bu * 2.0 * std::sin(k * u);
      if (w == 0.0) continue;
      const double* row = &gk[static_cast<std::size_t>(k - 1) * n];
      for (int j = 0; j < n; ++j) out[j] += w * row[j];
    }
  }
  const double scale = h / kTwoPi;
  for (double& v : out) v *= scale;
  return analyze(p.grid(), out);
}

}  // namespace vorwave
