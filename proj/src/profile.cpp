#include "vorwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

// cos/sin at the grid angles 2*pi*r/n.  The upper half is derived from the
// lower by reflection so that table symmetry is exact in floating point;
// synthesized even (odd) profiles then come out bit-symmetric in j -> n-j.
struct TrigTable {
  std::vector<double> c, s;
  explicit TrigTable(int n) : c(n), s(n) {
    for (int r = 0; r <= n / 2; ++r) {
      c[r] = std::cos(kTwoPi * r / n);
      s[r] = std::sin(kTwoPi * r / n);
    }
    for (int r = n / 2 + 1; r < n; ++r) {
      c[r] = c[n - r];
      s[r] = -s[n - r];
    }
  }
};

}  // namespace

SurfaceProfile::SurfaceProfile()
    : grid_(16), cos_(grid_.n_modes() + 1, 0.0), sin_(grid_.n_modes() + 1, 0.0) {}

SurfaceProfile SurfaceProfile::from_cos(const Grid& grid, std::vector<double> cos_coeffs) {
  return from_coeffs(grid, std::move(cos_coeffs), {});
}

SurfaceProfile SurfaceProfile::from_coeffs(const Grid& grid, std::vector<double> cos_coeffs,
                                           std::vector<double> sin_coeffs) {
  const int m = grid.n_modes();
  if (static_cast<int>(cos_coeffs.size()) > m + 1 ||
      static_cast<int>(sin_coeffs.size()) > m + 1) {
    throw ParameterError("coefficient vector exceeds grid modes: grid holds " +
                         std::to_string(m + 1));
  }
  if (!sin_coeffs.empty() && sin_coeffs[0] != 0.0) {
    throw ParameterError("sin coefficient of mode 0 must be 0");
  }
  if (static_cast<int>(sin_coeffs.size()) == m + 1 && sin_coeffs[m] != 0.0) {
    throw ParameterError("Nyquist sine mode is not representable on the grid");
  }
  SurfaceProfile p;
  p.grid_ = grid;
  cos_coeffs.resize(m + 1, 0.0);
  sin_coeffs.resize(m + 1, 0.0);
  p.cos_ = std::move(cos_coeffs);
  p.sin_ = std::move(sin_coeffs);
  return p;
}

SurfaceProfile SurfaceProfile::constant(const Grid& grid, double value) {
  return from_cos(grid, {value});
}

SurfaceProfile SurfaceProfile::from_values(const Grid& grid, const std::vector<double>& values) {
  const int n = grid.n_points();
  if (static_cast<int>(values.size()) != n) {
    throw ParameterError("value vector size " + std::to_string(values.size()) +
                         " does not match grid size " + std::to_string(n));
  }
  const TrigTable t(n);
  const int m = grid.n_modes();
  std::vector<double> cc(m + 1, 0.0), sc(m + 1, 0.0);
  double s0 = 0.0;
  for (int j = 0; j < n; ++j) s0 += values[j];
  cc[0] = s0 / n;
  for (int k = 1; k < m; ++k) {
    double sc_k = 0.0, ss_k = 0.0;
    for (int j = 0; j < n; ++j) {
      const int r = static_cast<int>((static_cast<long long>(k) * j) % n);
      sc_k += values[j] * t.c[r];
      ss_k += values[j] * t.s[r];
    }
    cc[k] = 2.0 * sc_k / n;
    sc[k] = 2.0 * ss_k / n;
  }
  // Nyquist cosine keeps analysis/synthesis a bijection; its sine twin is 0.
  double sn = 0.0;
  for (int j = 0; j < n; ++j) {
    const int r = static_cast<int>((static_cast<long long>(m) * j) % n);
    sn += values[j] * t.c[r];
  }
  cc[m] = sn / n;
  return from_coeffs(grid, std::move(cc), std::move(sc));
}

Parity SurfaceProfile::parity() const {
  for (double b : sin_) {
    if (b != 0.0) return Parity::general;
  }
  return Parity::even;
}

int SurfaceProfile::degree() const {
  for (int k = n_modes(); k >= 1; --k) {
    if (cos_[k] != 0.0 || sin_[k] != 0.0) return k;
  }
  return 0;
}

std::vector<double> SurfaceProfile::values() const { return values_on(grid_); }

std::vector<double> SurfaceProfile::values_on(const Grid& g) const {
  const int deg = degree();
  // A foreign grid must resolve every mode strictly below its Nyquist; the
  // profile's own grid may carry its Nyquist cosine.
  if (!(grid_ == g) && deg >= g.n_modes()) {
    throw ParameterError("target grid too small for profile degree " +
                         std::to_string(deg));
  }
  const int n = g.n_points();
  const TrigTable t(n);
  std::vector<double> v(n, cos_[0]);
  const int top = std::min(deg, g.n_modes());
  for (int k = 1; k <= top; ++k) {
    const double a = cos_[k], b = sin_[k];
    if (a == 0.0 && b == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const int r = static_cast<int>((static_cast<long long>(k) * j) % n);
      v[j] += a * t.c[r] + b * t.s[r];
    }
  }
  return v;
}

double SurfaceProfile::value_at(double x) const {
  double v = cos_[0];
  const int deg = degree();
  for (int k = 1; k <= deg; ++k) {
    if (cos_[k] == 0.0 && sin_[k] == 0.0) continue;
    v += cos_[k] * std::cos(k * x) + sin_[k] * std::sin(k * x);
  }
  return v;
}

double SurfaceProfile::crest() const {
  double v = 0.0;
  for (int k = 0; k <= n_modes(); ++k) v += cos_[k];
  return v;
}

double SurfaceProfile::trough() const {
  double v = 0.0;
  for (int k = 0; k <= n_modes(); ++k) v += (k % 2 == 0) ? cos_[k] : -cos_[k];
  return v;
}

double SurfaceProfile::sup_abs() const {
  double s = 0.0;
  for (double v : values()) s = std::max(s, std::abs(v));
  return s;
}

SurfaceProfile SurfaceProfile::on_grid(const Grid& g) const {
  if (g.n_modes() < degree() + 1) {
    throw ParameterError("target grid cannot hold profile of degree " +
                         std::to_string(degree()));
  }
  std::vector<double> cc(cos_.begin(), cos_.begin() + std::min<int>(cos_.size(), g.n_modes() + 1));
  std::vector<double> sc(sin_.begin(), sin_.begin() + std::min<int>(sin_.size(), g.n_modes() + 1));
  return from_coeffs(g, std::move(cc), std::move(sc));
}

namespace {

SurfaceProfile lin_combine(const SurfaceProfile& a, double ca, const SurfaceProfile& b, double cb) {
  const Grid g = a.grid().n_points() >= b.grid().n_points() ? a.grid() : b.grid();
  const int m = g.n_modes();
  std::vector<double> cc(m + 1, 0.0), sc(m + 1, 0.0);
  for (int k = 0; k <= a.grid().n_modes(); ++k) {
    cc[k] += ca * a.cos_coeffs()[k];
    sc[k] += ca * a.sin_coeffs()[k];
  }
  for (int k = 0; k <= b.grid().n_modes(); ++k) {
    cc[k] += cb * b.cos_coeffs()[k];
    sc[k] += cb * b.sin_coeffs()[k];
  }
  sc[0] = 0.0;
  sc[m] = 0.0;
  return SurfaceProfile::from_coeffs(g, std::move(cc), std::move(sc));
}

}  // namespace

SurfaceProfile operator+(const SurfaceProfile& a, const SurfaceProfile& b) {
  return lin_combine(a, 1.0, b, 1.0);
}

SurfaceProfile operator-(const SurfaceProfile& a, const SurfaceProfile& b) {
  return lin_combine(a, 1.0, b, -1.0);
}

SurfaceProfile operator*(double c, const SurfaceProfile& p) {
  std::vector<double> cc = p.cos_coeffs(), sc = p.sin_coeffs();
  for (double& v : cc) v *= c;
  for (double& v : sc) v *= c;
  return SurfaceProfile::from_coeffs(p.grid(), std::move(cc), std::move(sc));
}

SurfaceProfile operator+(const SurfaceProfile& p, double c) {
  std::vector<double> cc = p.cos_coeffs();
  cc[0] += c;
  return SurfaceProfile::from_coeffs(p.grid(), std::move(cc), p.sin_coeffs());
}

SurfaceProfile operator+(double c, const SurfaceProfile& p) { return p + c; }

SurfaceProfile operator-(const SurfaceProfile& p, double c) { return p + (-c); }

SurfaceProfile operator-(double c, const SurfaceProfile& p) { return (-1.0 * p) + c; }

SurfaceProfile operator-(const SurfaceProfile& p) { return -1.0 * p; }

}  // namespace vorwave
