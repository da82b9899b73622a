#ifndef VORWAVE_GRID_HPP
#define VORWAVE_GRID_HPP

namespace vorwave {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Uniform collocation grid on [0, 2*pi): nodes x_j = 2*pi*j/n_points.
// n_points must be even and >= 16.
class Grid {
 public:
  explicit Grid(int n_points);

  // Smallest valid grid on which modes 0..degree sit strictly below Nyquist.
  static Grid for_degree(int degree);

  int n_points() const { return n_points_; }
  int n_modes() const { return n_points_ / 2; }  // Nyquist index
  double spacing() const { return kTwoPi / n_points_; }
  double node(int j) const { return kTwoPi * j / n_points_; }

  bool operator==(const Grid& other) const = default;

 private:
  int n_points_;
};

}  // namespace vorwave

#endif
