#include "vorwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

double coth(double u) { return 1.0 / std::tanh(u); }

void require_depth(double depth) {
  if (!(depth > 0.0)) throw ParameterError("depth must be > 0");
}

}  // namespace

SurfaceProfile analyze(const Grid& grid, const std::vector<double>& values) {
  return SurfaceProfile::from_values(grid, values);
}

SurfaceProfile multiply(const SurfaceProfile& a, const SurfaceProfile& b) {
  const int da = a.degree(), db = b.degree();
  const Grid out_grid = Grid::for_degree(da + db);
  std::vector<double> C(da + db + 1, 0.0), S(da + db + 1, 0.0);
  const auto& ac = a.cos_coeffs();
  const auto& as = a.sin_coeffs();
  const auto& bc = b.cos_coeffs();
  const auto& bs = b.sin_coeffs();
  // Product-to-sum expansion term by term; exact, so nothing can alias.
  for (int i = 0; i <= da; ++i) {
    const double ai = ac[i], bi = as[i];
    if (ai == 0.0 && bi == 0.0) continue;
    for (int j = 0; j <= db; ++j) {
      const double cj = bc[j], dj = bs[j];
      if (cj == 0.0 && dj == 0.0) continue;
      const int dm = std::abs(i - j), sp = i + j;
      const double sgn = i > j ? 1.0 : -1.0;  // sign of i - j when i != j
      if (ai != 0.0 && cj != 0.0) {
        const double t = 0.5 * ai * cj;
        C[dm] += t;
        C[sp] += t;
      }
      if (bi != 0.0 && dj != 0.0) {
        const double t = 0.5 * bi * dj;
        C[dm] += t;
        C[sp] -= t;
      }
      if (bi != 0.0 && cj != 0.0) {
        const double t = 0.5 * bi * cj;
        S[sp] += t;
        if (i != j) S[dm] += sgn * t;
      }
      if (ai != 0.0 && dj != 0.0) {
        const double t = 0.5 * ai * dj;
        S[sp] += t;
        if (i != j) S[dm] -= sgn * t;
      }
    }
  }
  C.resize(out_grid.n_modes() + 1, 0.0);
  S.resize(out_grid.n_modes() + 1, 0.0);
  return SurfaceProfile::from_coeffs(out_grid, std::move(C), std::move(S));
}

double product_mean(const SurfaceProfile& a, const SurfaceProfile& b) {
  const int top = std::min(a.degree(), b.degree());
  double s = a.cos_coeffs()[0] * b.cos_coeffs()[0];
  for (int k = 1; k <= top; ++k) {
    s += 0.5 * (a.cos_coeffs()[k] * b.cos_coeffs()[k] +
                a.sin_coeffs()[k] * b.sin_coeffs()[k]);
  }
  return s;
}

SurfaceProfile differentiate(const SurfaceProfile& p) {
  const int m = p.n_modes();
  // The Nyquist cosine differentiates to a Nyquist sine, which needs a
  // bigger grid to represent.
  const Grid g = (p.cos_coeffs()[m] != 0.0) ? Grid::for_degree(m) : p.grid();
  std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
  for (int k = 1; k <= m; ++k) {
    C[k] = k * p.sin_coeffs()[k];
    S[k] = -k * p.cos_coeffs()[k];
  }
  return SurfaceProfile::from_coeffs(g, std::move(C), std::move(S));
}

SurfaceProfile hilbert(const SurfaceProfile& p, double depth) {
  require_depth(depth);
  const int m = p.n_modes();
  const Grid g = (p.cos_coeffs()[m] != 0.0) ? Grid::for_degree(m) : p.grid();
  std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
  for (int k = 1; k <= m; ++k) {
    const double th = coth(k * depth);
    C[k] = -th * p.sin_coeffs()[k];
    S[k] = th * p.cos_coeffs()[k];
  }
  return SurfaceProfile::from_coeffs(g, std::move(C), std::move(S));
}

SurfaceProfile hilbert_prime(const SurfaceProfile& p, double depth) {
  require_depth(depth);
  const int m = p.n_modes();
  std::vector<double> C(m + 1, 0.0), S(m + 1, 0.0);
  for (int k = 1; k <= m; ++k) {
    const double mult = k * coth(k * depth);
    C[k] = mult * p.cos_coeffs()[k];
    S[k] = mult * p.sin_coeffs()[k];
  }
  return SurfaceProfile::from_coeffs(p.grid(), std::move(C), std::move(S));
}

SurfaceProfile dirichlet_G(const SurfaceProfile& p, double depth) {
  require_depth(depth);
  return hilbert_prime(p, depth) + p.mean() / depth;
}

}  // namespace vorwave
