#ifndef VORWAVE_PROFILE_HPP
#define VORWAVE_PROFILE_HPP

#include <vector>

#include "vorwave/grid.hpp"

namespace vorwave {

enum class Parity { even, general };

// A 2*pi-periodic trigonometric polynomial tied to a collocation grid.
// Coefficients are the source of truth:
//   p(x) = cos_coeffs[0] + sum_k cos_coeffs[k] cos(kx) + sin_coeffs[k] sin(kx).
// sin_coeffs[0] is always 0, and the Nyquist sine slot is unrepresentable on
// the grid, so it must be 0 too.  Values are synthesized on demand; no cached
// mutable state, so profiles are safe to share across threads.
class SurfaceProfile {
 public:
  SurfaceProfile();  // zero profile on the minimal grid

  static SurfaceProfile from_values(const Grid& grid, const std::vector<double>& values);
  static SurfaceProfile from_cos(const Grid& grid, std::vector<double> cos_coeffs);
  static SurfaceProfile from_coeffs(const Grid& grid, std::vector<double> cos_coeffs,
                                    std::vector<double> sin_coeffs);
  static SurfaceProfile constant(const Grid& grid, double value);

  const Grid& grid() const { return grid_; }
  int n_modes() const { return grid_.n_modes(); }
  const std::vector<double>& cos_coeffs() const { return cos_; }  // size n_modes()+1
  const std::vector<double>& sin_coeffs() const { return sin_; }  // size n_modes()+1
  Parity parity() const;   // even iff the sine block is identically zero
  int degree() const;      // highest mode index with a nonzero coefficient

  std::vector<double> values() const;                  // synthesis at the grid nodes
  std::vector<double> values_on(const Grid& g) const;  // synthesis on another grid
  double value_at(double x) const;
  double mean() const { return cos_[0]; }
  double crest() const;   // value at x = 0
  double trough() const;  // value at x = pi
  double sup_abs() const; // max |value| over the grid nodes

  // Re-embed onto a grid with at least as many modes; coefficients are copied.
  SurfaceProfile on_grid(const Grid& g) const;

 private:
  Grid grid_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// Coefficient-wise linear arithmetic.  Mixed grids promote to the larger one.
SurfaceProfile operator+(const SurfaceProfile& a, const SurfaceProfile& b);
SurfaceProfile operator-(const SurfaceProfile& a, const SurfaceProfile& b);
SurfaceProfile operator*(double c, const SurfaceProfile& p);
SurfaceProfile operator+(const SurfaceProfile& p, double c);
SurfaceProfile operator+(double c, const SurfaceProfile& p);
SurfaceProfile operator-(const SurfaceProfile& p, double c);
SurfaceProfile operator-(double c, const SurfaceProfile& p);
SurfaceProfile operator-(const SurfaceProfile& p);

}  // namespace vorwave

#endif
