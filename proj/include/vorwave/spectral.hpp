#ifndef VORWAVE_SPECTRAL_HPP
#define VORWAVE_SPECTRAL_HPP

#include <vector>

#include "vorwave/profile.hpp"

namespace vorwave {

// Collocation analysis: values at the grid nodes -> trigonometric polynomial.
SurfaceProfile analyze(const Grid& grid, const std::vector<double>& values);

// Exact product of two trigonometric polynomials.  The result lives on a grid
// sized for the full degree sum, so no aliasing can occur.
SurfaceProfile multiply(const SurfaceProfile& a, const SurfaceProfile& b);

// Exact mean of a product, straight from coefficients (Parseval).
double product_mean(const SurfaceProfile& a, const SurfaceProfile& b);

SurfaceProfile differentiate(const SurfaceProfile& p);

// Conformal strip Hilbert transform of depth d:
//   cos(kx) -> coth(kd) sin(kx),  sin(kx) -> -coth(kd) cos(kx),  mean -> 0.
SurfaceProfile hilbert(const SurfaceProfile& p, double depth);

// H' = H o d/dx, Fourier multiplier k*coth(kd) on both blocks.
SurfaceProfile hilbert_prime(const SurfaceProfile& p, double depth);

// Flat-strip Dirichlet-Neumann operator: G(p) = mean(p)/depth + H'(p).
SurfaceProfile dirichlet_G(const SurfaceProfile& p, double depth);

}  // namespace vorwave

#endif
