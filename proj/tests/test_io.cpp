#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "vorwave/errors.hpp"
#include "vorwave/io.hpp"
#include "vorwave/kernel.hpp"
#include "vorwave/solver.hpp"
#include "vorwave/version.hpp"

using namespace vorwave;

namespace {

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

// std::stod throws out_of_range on subnormals; strtod is the parsing model.
double parse_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

BranchResult tiny_branch() {
  const PhysicalParams pp = laminar_state(9.81, 1.0, -0.5, -2.0);
  std::vector<double> C(Grid(32).n_modes() + 1, 0.0);
  C[0] = 1.0;
  C[1] = 1.0 / 3.0;  // not exactly representable: exercises the 17-digit path
  BranchResult br;
  br.points.push_back(make_branch_point(pp, SurfaceProfile::from_cos(Grid(32), C), 0.0));
  C[1] = 0.11;
  br.points.push_back(
      make_branch_point(pp, SurfaceProfile::from_cos(Grid(32), C), 0.25));
  br.stop = StoppingReason{StopKind::max_points, "point budget, reached"};
  return br;
}

}  // namespace

TEST_CASE("seventeen significant digits reproduce every double bit for bit") {
  const double cases[] = {1.0 / 3.0,
                          1e-300,
                          -0.0,
                          3.14159265358979323846,
                          12345.678901234567,
                          1e300,
                          5e-324,
                          -7.2615480091626505};
  for (double v : cases) {
    const double back = parse_double(format_g17(v));
    CHECK(same_bits(back, v));
  }
  CHECK(std::signbit(parse_double(format_g17(-0.0))));
}

TEST_CASE("config text: sections flatten, comments skip, later values override") {
  const std::string text =
      "# leading comment\n"
      "gamma = -1.5\n"
      "depth=2\n"
      "\n"
      "[continuation]\n"
      "step = 0.02\n"
      "max_points = 40\n"
      "; another comment style\n"
      "[kernel]\n"
      "samples=200\n";
  Config cfg = parse_config_text(text);
  CHECK(cfg.get_num("gamma", 0.0) == -1.5);
  CHECK(cfg.get_num("depth", 0.0) == 2.0);
  CHECK(cfg.get_num("continuation.step", 0.0) == 0.02);
  CHECK(cfg.get_int("continuation.max_points", 0) == 40);
  CHECK(cfg.get_int("kernel.samples", 0) == 200);
  CHECK(cfg.has("continuation.step"));
  CHECK(!cfg.has("step"));
  CHECK(cfg.get_num("missing", 7.25) == 7.25);
  CHECK(cfg.get_str("missing", "dflt") == "dflt");

  cfg.set("gamma", "3.5");  // flag layering overrides in place
  CHECK(cfg.get_num("gamma", 0.0) == 3.5);
  int gamma_entries = 0;
  for (const auto& [k, v] : cfg.entries()) gamma_entries += (k == "gamma");
  CHECK(gamma_entries == 1);
}

TEST_CASE("config errors carry the offending line number") {
  try {
    parse_config_text("a = 1\nb = 2\n\nnot a pair\n");
    FAIL("expected a parse failure");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("[unclosed\nk=1\n"), ParameterError);
  CHECK_THROWS_AS(parse_config_text("= value\n"), ParameterError);

  Config cfg = parse_config_text("x = fast\nn = 2.5\n");
  CHECK_THROWS_AS(cfg.get_num("x", 0.0), ParameterError);
  CHECK_THROWS_AS(cfg.get_int("n", 0), ParameterError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/vorwave.cfg"), ParameterError);
}

TEST_CASE("branch file round trip is bit-faithful and keeps config order") {
  const BranchResult br = tiny_branch();
  const BifurcationPoint bif{-2.8789574554041260, 25.279438574622874, 1, 3.2e-13,
                             41.7};
  Config cfg;
  cfg.set("gamma", "-0.5");
  cfg.set("depth", "1");
  cfg.set("continuation.step", "0.02");

  std::stringstream ss;
  write_branch_jsonl(ss, bif, br, cfg);

  const BranchFile file = read_branch_jsonl(ss);
  CHECK(file.version == kVersion);
  REQUIRE(file.config.size() == 3);
  // key-value fidelity (the JSON reader does not promise key order)
  auto lookup = [&](const std::string& key) -> std::string {
    for (const auto& [k, v] : file.config)
      if (k == key) return v;
    return "<missing>";
  };
  CHECK(lookup("gamma") == "-0.5");
  CHECK(lookup("depth") == "1");
  CHECK(lookup("continuation.step") == "0.02");
  CHECK(same_bits(file.bifurcation.m_star, bif.m_star));
  CHECK(same_bits(file.bifurcation.Q_star, bif.Q_star));
  CHECK(file.bifurcation.mode == 1);

  REQUIRE(file.result.points.size() == br.points.size());
  for (std::size_t i = 0; i < br.points.size(); ++i) {
    const BranchPoint& a = br.points[i];
    const BranchPoint& b = file.result.points[i];
    CHECK(same_bits(a.arclength_s, b.arclength_s));
    CHECK(same_bits(a.amplitude, b.amplitude));
    CHECK(same_bits(a.slope_N, b.slope_N));
    CHECK(same_bits(a.convexity_M, b.convexity_M));
    CHECK(same_bits(a.params.Q, b.params.Q));
    CHECK(same_bits(a.params.m, b.params.m));
    CHECK(same_bits(a.residuals.babenko_res, b.residuals.babenko_res));
    CHECK(same_bits(a.residuals.no_stagnation_margin, b.residuals.no_stagnation_margin));
    CHECK(a.residuals.nodal_ok == b.residuals.nodal_ok);
    REQUIRE(a.eta.grid().n_points() == b.eta.grid().n_points());
    const auto& ac = a.eta.cos_coeffs();
    const auto& bc = b.eta.cos_coeffs();
    REQUIRE(ac.size() == bc.size());
    for (std::size_t k = 0; k < ac.size(); ++k) CHECK(same_bits(ac[k], bc[k]));
  }
  CHECK(file.result.stop.kind == StopKind::max_points);
  CHECK(file.result.stop.evidence == "point budget, reached");
}

TEST_CASE("profiles with a sine part survive the round trip too") {
  const Grid g(16);
  std::vector<double> C(g.n_modes() + 1, 0.0), S(g.n_modes() + 1, 0.0);
  C[0] = 1.0;
  S[2] = 0.875;
  BranchResult br;
  BranchPoint bp;
  bp.params = laminar_state(9.81, 1.0, 0.0, -1.0);
  bp.eta = SurfaceProfile::from_coeffs(g, C, S);
  br.points.push_back(std::move(bp));
  br.stop = StoppingReason{StopKind::step_collapse, ""};

  std::stringstream ss;
  write_branch_jsonl(ss, BifurcationPoint{}, br, Config{});
  const BranchFile file = read_branch_jsonl(ss);
  REQUIRE(file.result.points.size() == 1);
  CHECK(file.result.points[0].eta.sin_coeffs()[2] == 0.875);
  CHECK(file.result.points[0].eta.parity() != Parity::even);
}

TEST_CASE("corrupted or truncated branch files are rejected with line numbers") {
  const BranchResult br = tiny_branch();
  std::stringstream ss;
  write_branch_jsonl(ss, BifurcationPoint{}, br, Config{});
  const std::string full = ss.str();

  // drop the final stopping record
  const std::string truncated = full.substr(0, full.rfind("{\"stopping\""));
  std::stringstream t(truncated);
  CHECK_THROWS_AS(read_branch_jsonl(t), ParameterError);

  // corrupt a digit run into garbage on line 3
  std::string corrupt = full;
  const size_t pos = corrupt.find("\"amplitude\":");
  REQUIRE(pos != std::string::npos);
  corrupt.replace(pos, 12, "\"amplitude\"??");
  std::stringstream c(corrupt);
  try {
    read_branch_jsonl(c);
    FAIL("expected rejection of the corrupted line");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::stringstream u("{\"meta\":{\"version\":\"x\"}}\n{\"mystery\":1}\n");
  CHECK_THROWS_AS(read_branch_jsonl(u), ParameterError);

  std::stringstream k(
      "{\"meta\":{\"version\":\"x\"}}\n{\"stopping\":{\"kind\":\"nope\",\"evidence\":\"\"}}\n");
  CHECK_THROWS_AS(read_branch_jsonl(k), ParameterError);
}

TEST_CASE("CSV writers: stable headers, config echo, LF-only, deterministic") {
  Config cfg;
  cfg.set("gamma", "-1");
  cfg.set("depth", "1");

  std::ostringstream sum1, sum2;
  const BranchResult br = tiny_branch();
  write_summary_csv(sum1, br, cfg);
  write_summary_csv(sum2, br, cfg);
  CHECK(sum1.str() == sum2.str());
  CHECK(sum1.str().find(
            "s,amplitude,slope_N,convexity_M,Q,m,stagnation_margin,babenko_res,"
            "averages_res\n") != std::string::npos);
  CHECK(sum1.str().find("# gamma=-1\n") != std::string::npos);
  CHECK(sum1.str().find("# version=") != std::string::npos);
  CHECK(sum1.str().find('\r') == std::string::npos);

  std::ostringstream ker;
  write_kernel_csv(ker, tabulate_kernel(1.0, 0.5, 2.5, 9), cfg);
  CHECK(ker.str().find("s,beta,beta_prime\n") != std::string::npos);
  CHECK(ker.str().find("# depth=1") != std::string::npos);
  // 9 samples: count data rows
  int rows = 0;
  std::istringstream kin(ker.str());
  std::string line;
  while (std::getline(kin, line))
    if (!line.empty() && line[0] != '#' && line[0] != 's') ++rows;
  CHECK(rows == 9);

  std::ostringstream aud;
  write_audit_csv(aud, {audit_kernel(1.0, 64)}, cfg);
  CHECK(aud.str().find("subject,check,relation,lhs,rhs,margin,pass,degenerate\n") !=
        std::string::npos);
  CHECK(aud.str().find("kernel depth=1") != std::string::npos);
  CHECK(aud.str().find("quarter_period_floor") != std::string::npos);
}
