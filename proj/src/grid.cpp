#include "vorwave/grid.hpp"

#include <string>

#include "vorwave/errors.hpp"

namespace vorwave {

Grid::Grid(int n_points) : n_points_(n_points) {
  if (n_points < 16 || n_points % 2 != 0) {
    throw ParameterError("grid size must be even and >= 16, got " +
                         std::to_string(n_points));
  }
}

Grid Grid::for_degree(int degree) {
  if (degree < 0) throw ParameterError("profile degree must be >= 0");
  int n = 2 * (degree + 1);
  if (n < 16) n = 16;
  return Grid(n);
}

}  // namespace vorwave
