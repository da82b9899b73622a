#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "vorwave/errors.hpp"
#include "vorwave/formulation.hpp"
#include "vorwave/profile.hpp"
#include "vorwave/rng.hpp"
#include "vorwave/solver.hpp"
#include "vorwave/spectral.hpp"
#include "vorwave/verify.hpp"

using namespace vorwave;

namespace {

bool has_check(const AuditReport& rep, const std::string& name) {
  return std::any_of(rep.checks.begin(), rep.checks.end(),
                     [&](const AuditCheck& c) { return c.name == name; });
}

const AuditCheck& find_check(const AuditReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST_CASE("admissible sampler: even, positive, increasing toward the half period") {
  Rng rng(20240817);
  const Grid grid(64);
  const Grid fine(256);
  for (int t = 0; t < 20; ++t) {
    const SurfaceProfile f = random_admissible_profile(rng, grid);
    CHECK(f.parity() == Parity::even);
    const std::vector<double> v = f.values_on(fine);
    CHECK(*std::min_element(v.begin(), v.end()) > 0.0);
    const std::vector<double> dv = differentiate(f).values_on(fine);
    // strictly increasing on the open half period: the value at the half
    // period (the trough of the wave, maximum of f) exceeds the one at zero
    for (int i = 1; i < fine.n_points() / 2; ++i) CHECK(dv[i] > 0.0);
    CHECK(f.trough() > f.crest());
  }
  Rng a(7), b(7);
  const SurfaceProfile fa = random_admissible_profile(a, grid);
  const SurfaceProfile fb = random_admissible_profile(b, grid);
  CHECK(fa.values()[3] == fb.values()[3]);  // same seed, same profile
  CHECK_THROWS_AS(random_admissible_profile(rng, grid, 0), ParameterError);
}

TEST_CASE("kernel audit passes across the depth range and validates input") {
  for (double d : {0.01, 1.0, 100.0}) {
    const AuditReport rep = audit_kernel(d, 400);
    CHECK(rep.overall);
    CHECK(!rep.inconclusive);
    CHECK(has_check(rep, "positive_before_half_period"));
    CHECK(has_check(rep, "vanishes_at_half_period"));
    CHECK(has_check(rep, "strictly_decreasing"));
    CHECK(has_check(rep, "derivative_envelope"));
    CHECK(has_check(rep, "quarter_period_floor"));
  }
  CHECK_THROWS_AS(audit_kernel(0.0), ParameterError);
  CHECK_THROWS_AS(audit_kernel(1.0, 4), ParameterError);
}

TEST_CASE("inequality audits hold on random admissible profiles at several depths") {
  Rng rng(424242);
  const Grid grid(64);
  for (double d : {0.25, 1.0, 4.0}) {
    const PhysicalParams pp = laminar_state(9.81, d, 0.0, -1.0);
    for (int t = 0; t < 17; ++t) {
      const SurfaceProfile f = random_admissible_profile(rng, grid);
      const AuditReport ql = audit_quadratic_lower(f, d);
      CHECK(ql.overall);
      CHECK(!ql.inconclusive);
      const AuditReport cu = audit_cubic_upper(f, pp);
      CHECK(cu.overall);
      CHECK(!cu.inconclusive);
      if (!ql.overall || !cu.overall) {
        for (const auto& c : ql.checks)
          if (!c.pass) MESSAGE("quadratic_lower fail: ", c.name, " lhs=", c.lhs,
                               " rhs=", c.rhs);
        for (const auto& c : cu.checks)
          if (!c.pass) MESSAGE("cubic_upper fail: ", c.name, " lhs=", c.lhs,
                               " rhs=", c.rhs);
      }
    }
  }
}

TEST_CASE("constant profile degenerates every strict inequality into a tagged pass") {
  const SurfaceProfile f = SurfaceProfile::constant(Grid(32), 2.0);
  const AuditReport ql = audit_quadratic_lower(f, 1.0);
  CHECK(ql.overall);
  CHECK(!ql.inconclusive);
  CHECK(std::any_of(ql.checks.begin(), ql.checks.end(),
                    [](const AuditCheck& c) { return c.degenerate; }));
  const AuditReport cu =
      audit_cubic_upper(f, laminar_state(9.81, 1.0, 0.0, -1.0));
  CHECK(cu.overall);
  CHECK(std::any_of(cu.checks.begin(), cu.checks.end(),
                    [](const AuditCheck& c) { return c.degenerate; }));
}

TEST_CASE("profiles violating the hypotheses are reported inconclusive, not failed") {
  const Grid grid(32);
  // decreasing on (0, pi)
  std::vector<double> C(grid.n_modes() + 1, 0.0);
  C[0] = 2.0;
  C[1] = 1.0;
  const SurfaceProfile decreasing = SurfaceProfile::from_cos(grid, std::move(C));
  AuditReport rep = audit_quadratic_lower(decreasing, 1.0);
  CHECK(rep.inconclusive);
  CHECK(!rep.overall);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].name == "admissible_hypotheses");

  // negative somewhere
  std::vector<double> Cn(grid.n_modes() + 1, 0.0);
  Cn[0] = -2.0;
  Cn[1] = -1.0;
  const SurfaceProfile negative = SurfaceProfile::from_cos(grid, std::move(Cn));
  CHECK(audit_quadratic_lower(negative, 1.0).inconclusive);

  // not even (the cosine part keeps the oscillation away from the degenerate
  // path so the parity violation itself is what gets flagged)
  std::vector<double> Ce(grid.n_modes() + 1, 0.0), Se(grid.n_modes() + 1, 0.0);
  Ce[0] = 2.0;
  Ce[1] = -0.5;
  Se[1] = 0.3;
  const SurfaceProfile skew = SurfaceProfile::from_coeffs(grid, Ce, Se);
  CHECK(audit_cubic_upper(skew, laminar_state(9.81, 1.0, 0.0, -1.0)).inconclusive);
}

TEST_CASE("solved favorable branch passes the crest-to-trough and split audits") {
  ContinuationConfig cc;
  cc.max_points = 6;
  const BranchResult br = continue_branch(9.81, 1.0, -1.0, Grid(64), cc);
  REQUIRE(br.points.size() == 6);
  for (const BranchPoint& pt : br.points) {
    const AuditReport s3 = audit_section_three(pt.params, pt);
    CHECK(s3.overall);
    CHECK(!s3.inconclusive);
    const AuditReport ct = audit_crest_trough(pt.params, pt);
    CHECK(ct.overall);
    CHECK(has_check(ct, "crest_trough_identity"));
    if (!s3.overall || !ct.overall) {
      MESSAGE("at s=", pt.arclength_s, " amplitude=", pt.amplitude);
      for (const auto& c : s3.checks)
        if (!c.pass) MESSAGE("section_three fail: ", c.name);
      for (const auto& c : ct.checks)
        if (!c.pass) MESSAGE("crest_trough fail: ", c.name);
    }
  }
  // favorable sign with a nonpositive vertical-velocity trace engages the
  // amplitude-domination check on genuine waves
  const AuditReport last = audit_section_three(br.points.back().params, br.points.back());
  CHECK(has_check(last, "left_split_upper_bound"));
  CHECK(find_check(last, "left_split_upper_bound").pass);
}

TEST_CASE("solved adverse branch closes the slope chain and the quadratic gate") {
  ContinuationConfig cc;
  cc.max_points = 5;
  const BranchResult br = continue_branch(9.81, 1.0, 0.5, Grid(64), cc);
  REQUIRE(br.points.size() == 5);
  for (std::size_t i = 1; i < br.points.size(); ++i) {
    const BranchPoint& pt = br.points[i];
    const AuditReport ct = audit_crest_trough(pt.params, pt);
    CHECK(ct.overall);
    CHECK(has_check(ct, "slope_chain"));
    CHECK(has_check(ct, "closing_quadratic"));
    if (!ct.overall)
      for (const auto& c : ct.checks)
        if (!c.pass)
          MESSAGE("adverse fail at s=", pt.arclength_s, ": ", c.name, " lhs=", c.lhs,
                  " rhs=", c.rhs);
  }
}

TEST_CASE("audits are deterministic evaluation to evaluation") {
  Rng rng(99);
  const SurfaceProfile f = random_admissible_profile(rng, Grid(64));
  const AuditReport a = audit_quadratic_lower(f, 0.7);
  const AuditReport b = audit_quadratic_lower(f, 0.7);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].lhs == b.checks[i].lhs);
    CHECK(a.checks[i].rhs == b.checks[i].rhs);
    CHECK(a.checks[i].margin == b.checks[i].margin);
  }
}
