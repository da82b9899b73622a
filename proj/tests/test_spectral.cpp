#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vorwave/errors.hpp"
#include "vorwave/profile.hpp"
#include "vorwave/rng.hpp"
#include "vorwave/spectral.hpp"

using namespace vorwave;

namespace {

SurfaceProfile random_poly(Rng& rng, const Grid& grid, int degree, bool even = false) {
  std::vector<double> C(grid.n_modes() + 1, 0.0), S(grid.n_modes() + 1, 0.0);
  C[0] = rng.uniform(-2.0, 2.0);
  for (int k = 1; k <= degree && k <= grid.n_modes(); ++k) {
    C[k] = rng.uniform(-1.0, 1.0) / k;
    if (!even && k < grid.n_modes()) S[k] = rng.uniform(-1.0, 1.0) / k;
  }
  return SurfaceProfile::from_coeffs(grid, std::move(C), std::move(S));
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid validation and geometry") {
  CHECK_THROWS_AS(Grid(15), ParameterError);
  CHECK_THROWS_AS(Grid(14), ParameterError);
  CHECK_THROWS_AS(Grid(-4), ParameterError);
  const Grid g(32);
  CHECK(g.n_points() == 32);
  CHECK(g.n_modes() == 16);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(16) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(Grid::for_degree(5).n_modes() > 5);
  CHECK(Grid::for_degree(16).n_modes() > 16);
}

TEST_CASE("analysis recovers exact coefficients of a trigonometric polynomial") {
  const Grid g(32);
  std::vector<double> v(g.n_points());
  for (int j = 0; j < g.n_points(); ++j) {
    const double x = g.node(j);
    v[j] = 7.0 + std::cos(3.0 * x) + 2.0 * std::sin(5.0 * x);
  }
  const SurfaceProfile p = analyze(g, v);
  CHECK(p.cos_coeffs()[0] == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(p.cos_coeffs()[3] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(p.sin_coeffs()[5] == doctest::Approx(2.0).epsilon(1e-13));
  double spill = 0.0;
  for (int k = 0; k <= g.n_modes(); ++k) {
    if (k != 0 && k != 3) spill = std::max(spill, std::abs(p.cos_coeffs()[k]));
    if (k != 5) spill = std::max(spill, std::abs(p.sin_coeffs()[k]));
  }
  CHECK(spill < 1e-13);
}

TEST_CASE("analysis and synthesis are a bijection including the Nyquist cosine") {
  Rng rng(11);
  const Grid g(24);
  std::vector<double> v(g.n_points());
  for (auto& x : v) x = rng.uniform(-3.0, 3.0);
  const SurfaceProfile p = analyze(g, v);
  CHECK(sup_diff(p.values(), v) < 1e-12);

  std::vector<double> C(g.n_modes() + 1, 0.0);
  C[g.n_modes()] = 1.25;  // pure Nyquist cosine survives the round trip
  const SurfaceProfile q = SurfaceProfile::from_cos(g, C);
  const SurfaceProfile r = analyze(g, q.values());
  CHECK(std::abs(r.cos_coeffs()[g.n_modes()] - 1.25) < 1e-13);
}

TEST_CASE("mean coefficient equals the trapezoid average of the samples") {
  Rng rng(5);
  const Grid g(48);
  std::vector<double> v(g.n_points());
  double acc = 0.0;
  for (auto& x : v) {
    x = rng.uniform(-1.0, 1.0);
    acc += x;
  }
  const SurfaceProfile p = analyze(g, v);
  CHECK(p.mean() == doctest::Approx(acc / g.n_points()).epsilon(1e-14));
}

TEST_CASE("coefficient rules: sin mode 0 and Nyquist sine are rejected") {
  const Grid g(16);
  std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
  S[0] = 1.0;
  CHECK_THROWS_AS(SurfaceProfile::from_coeffs(g, C, S), ParameterError);
  S[0] = 0.0;
  S[g.n_modes()] = 1.0;
  CHECK_THROWS_AS(SurfaceProfile::from_coeffs(g, C, S), ParameterError);
  std::vector<double> too_long(g.n_modes() + 2, 0.0);
  CHECK_THROWS_AS(SurfaceProfile::from_cos(g, too_long), ParameterError);
}

TEST_CASE("product expansion matches pointwise multiplication and cannot alias") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const SurfaceProfile a = random_poly(rng, Grid(32), 9);
    const SurfaceProfile b = random_poly(rng, Grid(32), 13);
    const SurfaceProfile ab = multiply(a, b);
    const Grid fine(128);
    const auto va = a.values_on(fine), vb = b.values_on(fine), vab = ab.values_on(fine);
    double worst = 0.0;
    for (int j = 0; j < fine.n_points(); ++j)
      worst = std::max(worst, std::abs(vab[j] - va[j] * vb[j]));
    CHECK(worst < 1e-13);
  }
  // cos(5x) cos(7x) = (cos 2x + cos 12x)/2 exactly
  const Grid g(32);
  std::vector<double> c5(g.n_modes() + 1, 0.0), c7(g.n_modes() + 1, 0.0);
  c5[5] = 1.0;
  c7[7] = 1.0;
  const SurfaceProfile prod =
      multiply(SurfaceProfile::from_cos(g, c5), SurfaceProfile::from_cos(g, c7));
  CHECK(prod.cos_coeffs()[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(prod.cos_coeffs()[12] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(prod.cos_coeffs()[0] == 0.0);
}

TEST_CASE("product mean agrees with the coefficient pairing rule") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const SurfaceProfile a = random_poly(rng, Grid(64), 20);
    const SurfaceProfile b = random_poly(rng, Grid(64), 20);
    double manual = a.cos_coeffs()[0] * b.cos_coeffs()[0];
    for (int k = 1; k <= 20; ++k)
      manual += 0.5 * (a.cos_coeffs()[k] * b.cos_coeffs()[k] +
                       a.sin_coeffs()[k] * b.sin_coeffs()[k]);
    CHECK(product_mean(a, b) == doctest::Approx(manual).epsilon(1e-13));
    CHECK(product_mean(a, b) == doctest::Approx(multiply(a, b).mean()).epsilon(1e-13));
  }
}

TEST_CASE("differentiation is the analytic mode rule, Nyquist cosine promotes the grid") {
  const Grid g(32);
  std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
  C[4] = 2.0;
  S[7] = -1.5;
  const SurfaceProfile p = SurfaceProfile::from_coeffs(g, C, S);
  const SurfaceProfile dp = differentiate(p);
  for (int j = 0; j < g.n_points(); ++j) {
    const double x = g.node(j);
    const double expect = -8.0 * std::sin(4.0 * x) - 10.5 * std::cos(7.0 * x);
    CHECK(dp.value_at(x) == doctest::Approx(expect).epsilon(1e-12));
  }
  // d/dx cos(Nx) = -N sin(Nx) needs a grid beyond N
  std::vector<double> nyq(g.n_modes() + 1, 0.0);
  nyq[g.n_modes()] = 1.0;
  const SurfaceProfile dn = differentiate(SurfaceProfile::from_cos(g, nyq));
  CHECK(dn.grid().n_modes() > g.n_modes());
  CHECK(dn.value_at(kPi / 64.0) ==
        doctest::Approx(-16.0 * std::sin(16.0 * kPi / 64.0)).epsilon(1e-12));
}

TEST_CASE("strip transform multiplier at unit depth matches coth(1)") {
  const double coth1 = 1.3130352854993313;  // cosh(1)/sinh(1)
  const Grid g(32);
  std::vector<double> C(g.n_modes() + 1, 0.0);
  C[1] = 1.0;
  const SurfaceProfile h = hilbert(SurfaceProfile::from_cos(g, C), 1.0);
  CHECK(h.sin_coeffs()[1] == doctest::Approx(coth1).epsilon(1e-15));
  CHECK(h.cos_coeffs()[1] == 0.0);
  CHECK(h.mean() == 0.0);
  // sin(kx) -> -coth(kd) cos(kx)
  std::vector<double> C2(g.n_modes() + 1, 0.0), S2(g.n_modes() + 1, 0.0);
  S2[3] = 1.0;
  const SurfaceProfile h2 = hilbert(SurfaceProfile::from_coeffs(g, C2, S2), 2.0);
  const double coth6 = std::cosh(6.0) / std::sinh(6.0);
  CHECK(h2.cos_coeffs()[3] == doctest::Approx(-coth6).epsilon(1e-15));
}

TEST_CASE("transform kills constants and removes the mean") {
  const SurfaceProfile c = SurfaceProfile::constant(Grid(16), 4.2);
  CHECK(hilbert(c, 1.0).sup_abs() == 0.0);
  Rng rng(77);
  const SurfaceProfile p = random_poly(rng, Grid(32), 10);
  CHECK(std::abs(hilbert(p, 0.5).mean()) == 0.0);
  CHECK_THROWS_AS(hilbert(p, 0.0), ParameterError);
  CHECK_THROWS_AS(hilbert(p, -1.0), ParameterError);
}

TEST_CASE("derivative-transform composition is the diagonal k coth(kd) rule") {
  Rng rng(41);
  const SurfaceProfile p = random_poly(rng, Grid(64), 15);
  const double d = 0.7;
  const SurfaceProfile a = hilbert_prime(p, d);
  const SurfaceProfile b = hilbert(differentiate(p), d);
  CHECK(sup_diff(a.values_on(Grid(128)), b.values_on(Grid(128))) < 1e-12);
  // explicit multiplier on a single mode
  const Grid g(32);
  std::vector<double> C(g.n_modes() + 1, 0.0);
  C[5] = 1.0;
  const SurfaceProfile hp = hilbert_prime(SurfaceProfile::from_cos(g, C), 1.0);
  const double mult = 5.0 * std::cosh(5.0) / std::sinh(5.0);
  CHECK(hp.cos_coeffs()[5] == doctest::Approx(mult).epsilon(1e-14));
}

TEST_CASE("flat-strip Dirichlet operator: constants map to mean/depth") {
  const double d = 2.5;
  const SurfaceProfile c = SurfaceProfile::constant(Grid(16), 3.0);
  const SurfaceProfile gc = dirichlet_G(c, d);
  CHECK(gc.mean() == doctest::Approx(3.0 / d).epsilon(1e-15));
  CHECK(gc.degree() == 0);
  const Grid g(32);
  std::vector<double> C(g.n_modes() + 1, 0.0);
  C[2] = 1.0;
  const SurfaceProfile gm = dirichlet_G(SurfaceProfile::from_cos(g, C), d);
  const double mult = 2.0 * std::cosh(2.0 * d) / std::sinh(2.0 * d);
  CHECK(gm.cos_coeffs()[2] == doctest::Approx(mult).epsilon(1e-14));
  CHECK(gm.cos_coeffs()[0] == 0.0);
}

TEST_CASE("parity bookkeeping is coefficient-exact") {
  const Grid g(16);
  std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
  C[1] = 1.0;
  CHECK(SurfaceProfile::from_cos(g, C).parity() == Parity::even);
  S[2] = 1e-300;
  CHECK(SurfaceProfile::from_coeffs(g, C, S).parity() == Parity::general);
}

TEST_CASE("profile re-embedding preserves values and rejects undersized grids") {
  Rng rng(3);
  const SurfaceProfile p = random_poly(rng, Grid(32), 12);
  const SurfaceProfile q = p.on_grid(Grid(128));
  CHECK(sup_diff(p.values_on(Grid(256)), q.values_on(Grid(256))) < 1e-14);
  CHECK_THROWS_AS(p.on_grid(Grid(16)), ParameterError);
}
