#ifndef VORWAVE_KERNEL_HPP
#define VORWAVE_KERNEL_HPP

#include <vector>

#include "vorwave/profile.hpp"

namespace vorwave {

// Depth-uniform lower bound for beta(pi/2, d): the kernel value at the
// quarter period exceeds this for every d > 0.  The deep-strip limit is
// cot(pi/4) = 1, so the bound is uniform but not sharp.  Feeds the universal
// amplitude constant 12*pi / floor.
inline constexpr double kBetaHalfPiFloor = (kPi - 2.0) / kPi;

// One kernel series evaluation: value, number of image terms summed, and a
// rigorous geometric bound on the dropped tail.
struct KernelEval {
  double value;
  int terms;
  double tail_bound;
};

// beta(s, d): 2*pi-periodic, odd convolution kernel of the strip Hilbert
// transform, evaluated by the periodized-image series with paired exponential
// terms.  Throws SingularityError at s = 0 (mod 2*pi).
KernelEval beta_eval(double s, double depth, double rel_tol = 1e-14);

// beta'(s, d), negative and even, via the squared-cosecant image series.
KernelEval beta_prime_eval(double s, double depth, double rel_tol = 1e-14);

struct KernelSample {
  double s;
  double beta;
  double beta_prime;
};

struct KernelTable {
  double depth;
  std::vector<KernelSample> samples;
  int truncation_terms;  // max image terms used over the table (either series)
  double tail_bound;     // max dropped-tail bound over the beta samples
};

KernelTable tabulate_kernel(double depth, double s_from, double s_to, int n_samples,
                            double rel_tol = 1e-14);

// The strip Hilbert transform evaluated as a principal-value convolution with
// beta: midpoint rule in u = x - s with nodes straddling u = 0 symmetrically,
// folded over the kernel's oddness.  Cross-validates the multiplier route.
SurfaceProfile pv_convolve(const SurfaceProfile& p, double depth, int quad_points = 2048);

}  // namespace vorwave

#endif
