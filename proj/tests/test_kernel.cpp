#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vorwave/errors.hpp"
#include "vorwave/kernel.hpp"
#include "vorwave/profile.hpp"
#include "vorwave/rng.hpp"
#include "vorwave/spectral.hpp"

using namespace vorwave;

TEST_CASE("kernel values at pinned points match the series summed independently") {
  // reference values from a 40-digit evaluation of the image series
  CHECK(beta_eval(kPi / 2.0, 1.0).value ==
        doctest::Approx(1.6163092660418823).epsilon(1e-14));
  CHECK(beta_eval(kPi / 4.0, 1.0).value ==
        doctest::Approx(2.9384148485648564).epsilon(1e-14));
  CHECK(beta_eval(1.0, 2.0).value == doctest::Approx(1.8945099016684289).epsilon(1e-14));
  CHECK(beta_eval(kPi / 2.0, 0.1).value ==
        doctest::Approx(15.707963267948966).epsilon(1e-14));
  CHECK(beta_eval(kPi / 2.0, 10.0).value ==
        doctest::Approx(1.0000000082446145).epsilon(1e-14));
}

TEST_CASE("kernel is odd, 2*pi-periodic, and vanishes at the half period") {
  for (double d : {0.05, 0.5, 1.0, 3.0, 40.0}) {
    for (double s : {0.3, 1.0, 2.5, 3.0}) {
      const double b = beta_eval(s, d).value;
      CHECK(beta_eval(-s, d).value == doctest::Approx(-b).epsilon(1e-13));
      CHECK(beta_eval(s + kTwoPi, d).value == doctest::Approx(b).epsilon(1e-12));
    }
    CHECK(std::abs(beta_eval(kPi, d).value) < 1e-13 * std::max(1.0, 1.0 / d));
  }
}

TEST_CASE("kernel evaluation refuses the non-removable singularities") {
  CHECK_THROWS_AS(beta_eval(0.0, 1.0), SingularityError);
  CHECK_THROWS_AS(beta_eval(kTwoPi, 1.0), SingularityError);
  CHECK_THROWS_AS(beta_eval(-kTwoPi, 0.5), SingularityError);
  CHECK_THROWS_AS(beta_prime_eval(0.0, 1.0), SingularityError);
  CHECK_THROWS_AS(beta_eval(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(beta_eval(1.0, -2.0), ParameterError);
}

TEST_CASE("derivative series agrees with a central difference of the value series") {
  for (double d : {0.25, 1.0, 4.0}) {
    for (double s : {0.2, 0.9, 1.7, 2.8}) {
      const double h = 1e-6;
      const double fd =
          (beta_eval(s + h, d).value - beta_eval(s - h, d).value) / (2.0 * h);
      const double bp = beta_prime_eval(s, d).value;
      CHECK(bp == doctest::Approx(fd).epsilon(1e-7));
      CHECK(bp < 0.0);  // strictly decreasing kernel
    }
  }
}

TEST_CASE("quarter-period floor holds for every depth and the constant is exact") {
  CHECK(kBetaHalfPiFloor == (kPi - 2.0) / kPi);
  for (double d : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1000.0}) {
    CHECK(beta_eval(kPi / 2.0, d).value > kBetaHalfPiFloor);
  }
}

TEST_CASE("derivative envelope -beta' < 1/d + 2/s^2 + 1/2 on the half period") {
  for (double d : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    for (int i = 1; i <= 200; ++i) {
      const double s = i * kPi / 200.0;
      const double env = 1.0 / d + 2.0 / (s * s) + 0.5;
      CHECK(-beta_prime_eval(s, d).value < env);
    }
  }
}

TEST_CASE("truncation tail bounds are rigorous and tiny at the default tolerance") {
  for (double d : {0.1, 1.0, 10.0}) {
    for (double s : {0.1, 1.5, 3.0}) {
      const KernelEval e = beta_eval(s, d);
      CHECK(e.tail_bound >= 0.0);
      CHECK(e.tail_bound <= 1e-12 * std::max(1.0, std::abs(e.value)));
      CHECK(e.terms >= 1);
    }
  }
}

TEST_CASE("tabulation covers the requested range in order and matches point evaluation") {
  const KernelTable t = tabulate_kernel(1.0, 0.1, 3.0, 50);
  CHECK(t.samples.size() == 50);
  CHECK(t.depth == 1.0);
  CHECK(t.samples.front().s == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(t.samples.back().s == doctest::Approx(3.0).epsilon(1e-15));
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const auto& r = t.samples[i];
    if (i > 0) CHECK(r.s > t.samples[i - 1].s);
    CHECK(r.beta == doctest::Approx(beta_eval(r.s, 1.0).value).epsilon(1e-14));
    CHECK(r.beta_prime == doctest::Approx(beta_prime_eval(r.s, 1.0).value).epsilon(1e-14));
  }
  CHECK_THROWS_AS(tabulate_kernel(1.0, 0.0, 3.0, 10), SingularityError);
  CHECK_THROWS_AS(tabulate_kernel(1.0, 2.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(tabulate_kernel(1.0, 0.5, 3.0, 1), ParameterError);
}

TEST_CASE("principal-value convolution reproduces the multiplier transform") {
  Rng rng(99);
  for (double d : {0.1, 1.0, 10.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Grid g(64);
      std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
      C[0] = rng.uniform(-1.0, 1.0);
      for (int k = 1; k <= 16; ++k) {
        C[k] = rng.uniform(-1.0, 1.0) / (k * k);
        S[k] = rng.uniform(-1.0, 1.0) / (k * k);
      }
      const SurfaceProfile p = SurfaceProfile::from_coeffs(g, C, S);
      const SurfaceProfile via_kernel = pv_convolve(p, d);
      const SurfaceProfile via_modes = hilbert(p, d);
      const auto a = via_kernel.values_on(Grid(256));
      const auto b = via_modes.values_on(Grid(256));
      double worst = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j)
        worst = std::max(worst, std::abs(a[j] - b[j]));
      CHECK(worst < 1e-9);
    }
  }
}
