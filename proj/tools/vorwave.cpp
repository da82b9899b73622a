// Command-line front end: kernel tabulation, single solves, branch
// continuation, amplitude bounds, audit batches, and parameter sweeps.
// Exit codes: 0 success, 2 usage, 3 solver failure, 4 audit failure.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vorwave/bounds.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/formulation.hpp"
#include "vorwave/io.hpp"
#include "vorwave/kernel.hpp"
#include "vorwave/profile.hpp"
#include "vorwave/rng.hpp"
#include "vorwave/solver.hpp"
#include "vorwave/spectral.hpp"
#include "vorwave/verify.hpp"
#include "vorwave/version.hpp"

namespace vw = vorwave;

namespace {

// Option layering: explicit flag > config file > built-in default.
double pick_num(const CLI::Option* o, double flag_v, const vw::Config& f,
                const std::string& key, double dflt) {
  if (o != nullptr && o->count() > 0) return flag_v;
  return f.get_num(key, dflt);
}

int pick_int(const CLI::Option* o, int flag_v, const vw::Config& f, const std::string& key,
             int dflt) {
  if (o != nullptr && o->count() > 0) return flag_v;
  return f.get_int(key, dflt);
}

std::string pick_str(const CLI::Option* o, const std::string& flag_v, const vw::Config& f,
                     const std::string& key, const std::string& dflt) {
  if (o != nullptr && o->count() > 0) return flag_v;
  return f.get_str(key, dflt);
}

std::vector<double> split_nums(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw vw::ParameterError("bad numeric list entry: " + tok);
    }
  }
  return out;
}

std::vector<double> pick_nums(const CLI::Option* o, const std::vector<double>& flag_v,
                              const vw::Config& f, const std::string& key,
                              const std::vector<double>& dflt) {
  if (o != nullptr && o->count() > 0) return flag_v;
  if (f.has(key)) return split_nums(f.get_str(key, ""));
  return dflt;
}

std::string join_nums(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += vw::format_g17(v[i]);
  }
  return out;
}

vw::Config load_optional_config(const std::string& path) {
  if (path.empty()) return vw::Config{};
  return vw::load_config_file(path);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!os) throw vw::ParameterError("cannot open output file: " + path);
  return os;
}

void meta_line(std::ostream& os, const vw::Config& resolved) {
  os << "{\"meta\":{\"version\":\"" << vw::kVersion << "\",\"config\":"
     << vw::config_json(resolved) << "}}\n";
}

std::string sibling_path(const std::string& out, const char* suffix) {
  std::filesystem::path p(out);
  p.replace_extension();
  return p.string() + suffix;
}

vw::ContinuationConfig continuation_from(const vw::Config& f) {
  vw::ContinuationConfig cc;
  cc.step = f.get_num("continuation.step", cc.step);
  cc.step_min = f.get_num("continuation.step_min", cc.step_min);
  cc.step_max = f.get_num("continuation.step_max", cc.step_max);
  cc.newton_tol = f.get_num("continuation.newton_tol", cc.newton_tol);
  cc.newton_max_iters = f.get_int("continuation.newton_max_iters", cc.newton_max_iters);
  cc.max_points = f.get_int("continuation.max_points", cc.max_points);
  cc.residual_accept = f.get_num("continuation.residual_accept", cc.residual_accept);
  cc.norm_blowup = f.get_num("continuation.norm_blowup", cc.norm_blowup);
  cc.flux_energy_blowup = f.get_num("continuation.flux_energy_blowup", cc.flux_energy_blowup);
  cc.stagnation_ratio = f.get_num("continuation.stagnation_ratio", cc.stagnation_ratio);
  cc.validate();
  return cc;
}

void embed_continuation(vw::Config& r, const vw::ContinuationConfig& cc) {
  r.set("continuation.step", vw::format_g17(cc.step));
  r.set("continuation.step_min", vw::format_g17(cc.step_min));
  r.set("continuation.step_max", vw::format_g17(cc.step_max));
  r.set("continuation.newton_tol", vw::format_g17(cc.newton_tol));
  r.set("continuation.newton_max_iters", std::to_string(cc.newton_max_iters));
  r.set("continuation.max_points", std::to_string(cc.max_points));
  r.set("continuation.residual_accept", vw::format_g17(cc.residual_accept));
  r.set("continuation.norm_blowup", vw::format_g17(cc.norm_blowup));
  r.set("continuation.flux_energy_blowup", vw::format_g17(cc.flux_energy_blowup));
  r.set("continuation.stagnation_ratio", vw::format_g17(cc.stagnation_ratio));
}

double rel_margin(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return (rhs - lhs) / scale;
}

// ---------------------------------------------------------------- kernel ---

struct KernelOpts {
  std::string config, out;
  double depth = 1.0, from = 0.01, to = vw::kPi;
  int samples = 500;
  CLI::Option *o_depth = nullptr, *o_from = nullptr, *o_to = nullptr, *o_samples = nullptr,
              *o_out = nullptr;
};

int run_kernel(const KernelOpts& k) {
  const vw::Config file = load_optional_config(k.config);
  const double depth = pick_num(k.o_depth, k.depth, file, "depth", 1.0);
  const double from = pick_num(k.o_from, k.from, file, "kernel.from", 0.01);
  const double to = pick_num(k.o_to, k.to, file, "kernel.to", vw::kPi);
  const int samples = pick_int(k.o_samples, k.samples, file, "kernel.samples", 500);
  const std::string out = pick_str(k.o_out, k.out, file, "out", "kernel.csv");
  if (!(from > 0.0 && from < to && to < vw::kTwoPi))
    throw vw::ParameterError("kernel range needs 0 < from < to < 2*pi");

  vw::Config resolved;
  resolved.set("depth", vw::format_g17(depth));
  resolved.set("kernel.from", vw::format_g17(from));
  resolved.set("kernel.to", vw::format_g17(to));
  resolved.set("kernel.samples", std::to_string(samples));
  resolved.set("out", out);

  const vw::KernelTable table = vw::tabulate_kernel(depth, from, to, samples);
  auto os = open_output(out);
  vw::write_kernel_csv(os, table, resolved);
  std::cout << "kernel: wrote " << table.samples.size() << " samples to " << out
            << " (depth=" << vw::format_g17(depth)
            << ", tail<=" << vw::format_g17(table.tail_bound) << ")\n";
  return 0;
}

// ----------------------------------------------------------------- solve ---

struct SolveOpts {
  std::string config, out;
  double gamma = -1.0, depth = 1.0, gravity = 9.81, flux = -1.0, perturb = 0.01;
  int grid = 128;
  CLI::Option *o_gamma = nullptr, *o_depth = nullptr, *o_gravity = nullptr, *o_flux = nullptr,
              *o_perturb = nullptr, *o_grid = nullptr, *o_out = nullptr;
};

int run_solve(const SolveOpts& s) {
  const vw::Config file = load_optional_config(s.config);
  const double gamma = pick_num(s.o_gamma, s.gamma, file, "gamma", -1.0);
  const double depth = pick_num(s.o_depth, s.depth, file, "depth", 1.0);
  const double gravity = pick_num(s.o_gravity, s.gravity, file, "gravity", 9.81);
  const double flux = pick_num(s.o_flux, s.flux, file, "flux", -1.0);
  const double perturb = pick_num(s.o_perturb, s.perturb, file, "solve.perturb", 0.01);
  const int grid_n = pick_int(s.o_grid, s.grid, file, "grid", 128);
  const std::string out = pick_str(s.o_out, s.out, file, "out", "solve.jsonl");
  const vw::ContinuationConfig cc = continuation_from(file);

  vw::Config resolved;
  resolved.set("gamma", vw::format_g17(gamma));
  resolved.set("depth", vw::format_g17(depth));
  resolved.set("gravity", vw::format_g17(gravity));
  resolved.set("flux", vw::format_g17(flux));
  resolved.set("solve.perturb", vw::format_g17(perturb));
  resolved.set("grid", std::to_string(grid_n));
  resolved.set("out", out);
  embed_continuation(resolved, cc);

  const vw::Grid grid(grid_n);
  const vw::PhysicalParams pp = vw::laminar_state(gravity, depth, gamma, flux);
  std::vector<double> cos_coeffs(grid.n_modes() + 1, 0.0);
  cos_coeffs[0] = depth;
  if (grid.n_modes() >= 1) cos_coeffs[1] = perturb;
  const vw::SurfaceProfile eta0 = vw::SurfaceProfile::from_cos(grid, std::move(cos_coeffs));
  const vw::BranchPoint seed = vw::make_branch_point(pp, eta0, 0.0);
  const vw::BranchPoint wave = vw::newton_solve(seed, {vw::FreeParam::Q}, cc);

  auto os = open_output(out);
  meta_line(os, resolved);
  os << "{\"point\":" << vw::to_json(wave) << "}\n";
  std::cout << "solve: converged at flux m=" << vw::format_g17(wave.params.m)
            << " with Q=" << vw::format_g17(wave.params.Q)
            << ", amplitude=" << vw::format_g17(wave.amplitude)
            << ", residual=" << vw::format_g17(wave.residuals.babenko_res) << "\n";
  return 0;
}

// ---------------------------------------------------------------- branch ---

struct BranchOpts {
  std::string config, out;
  double gamma = -1.0, depth = 1.0, gravity = 9.81;
  int grid = 256;
  CLI::Option *o_gamma = nullptr, *o_depth = nullptr, *o_gravity = nullptr, *o_grid = nullptr,
              *o_out = nullptr;
};

int run_branch(const BranchOpts& b) {
  const vw::Config file = load_optional_config(b.config);
  const double gamma = pick_num(b.o_gamma, b.gamma, file, "gamma", -1.0);
  const double depth = pick_num(b.o_depth, b.depth, file, "depth", 1.0);
  const double gravity = pick_num(b.o_gravity, b.gravity, file, "gravity", 9.81);
  const int grid_n = pick_int(b.o_grid, b.grid, file, "grid", 256);
  const std::string out = pick_str(b.o_out, b.out, file, "out", "branch.jsonl");
  const vw::ContinuationConfig cc = continuation_from(file);

  vw::Config resolved;
  resolved.set("gamma", vw::format_g17(gamma));
  resolved.set("depth", vw::format_g17(depth));
  resolved.set("gravity", vw::format_g17(gravity));
  resolved.set("grid", std::to_string(grid_n));
  resolved.set("out", out);
  embed_continuation(resolved, cc);

  const vw::BifurcationPoint bif = vw::find_bifurcation(gravity, depth, gamma);
  const vw::BranchResult br = vw::continue_branch(gravity, depth, gamma, vw::Grid(grid_n), cc);

  auto os = open_output(out);
  vw::write_branch_jsonl(os, bif, br, resolved);
  const std::string summary = sibling_path(out, ".summary.csv");
  auto cs = open_output(summary);
  vw::write_summary_csv(cs, br, resolved);

  double max_amp = 0.0;
  for (const auto& p : br.points) max_amp = std::max(max_amp, p.amplitude);
  std::cout << "branch: " << br.points.size() << " points from m*="
            << vw::format_g17(bif.m_star) << ", max amplitude=" << vw::format_g17(max_amp)
            << ", stop=" << vw::to_string(br.stop.kind) << "\n"
            << "branch: wrote " << out << " and " << summary << "\n";
  return 0;
}

// ---------------------------------------------------------------- bounds ---

struct BoundsOpts {
  std::string config, out, mode = "apriori", route = "auto", branch_path;
  std::vector<double> gammas;
  double depth = 1.0, gravity = 9.81, flux = -1.0, eps = 0.1;
  double slope_cap = 1.0, convexity_cap = 1.0, f2 = 0.0;
  CLI::Option *o_gammas = nullptr, *o_depth = nullptr, *o_gravity = nullptr, *o_flux = nullptr,
              *o_eps = nullptr, *o_slope = nullptr, *o_conv = nullptr, *o_f2 = nullptr,
              *o_out = nullptr;
};

vw::BoundReport favorable_report(double gravity, double depth, double gamma) {
  vw::BoundReport rep;
  rep.route = vw::BoundRoute::favorable;
  rep.applicable = gamma <= 0.0;
  vw::BoundCondition cond;
  cond.name = "favorable_vorticity";
  cond.satisfied = rep.applicable;
  cond.margin = rel_margin(gamma, 0.0);
  rep.conditions.push_back(cond);
  if (rep.applicable) rep.bound_value = vw::favorable_bound(gravity, depth, gamma);
  return rep;
}

void append_amplitude_check(vw::BoundReport& rep, double amplitude) {
  if (!rep.applicable || !rep.bound_value) return;
  vw::BoundCondition cond;
  cond.name = "amplitude_below_bound";
  cond.satisfied = amplitude < *rep.bound_value;
  cond.margin = rel_margin(amplitude, *rep.bound_value);
  rep.conditions.push_back(cond);
}

void bounds_csv_rows(std::ostream& os, const std::string& subject,
                     const vw::BoundReport& rep) {
  for (const auto& c : rep.conditions) {
    os << subject << ',' << vw::to_string(rep.route) << ',' << (rep.applicable ? 1 : 0) << ','
       << (rep.bound_value ? vw::format_g17(*rep.bound_value) : std::string{}) << ','
       << (rep.envelope ? vw::format_g17(*rep.envelope) : std::string{}) << ',' << c.name
       << ',' << (c.satisfied ? 1 : 0) << ',' << vw::format_g17(c.margin) << "\n";
  }
}

void emit_report(std::ostream& jsonl, std::ostream* csv, const std::string& subject,
                 const vw::BoundReport& rep) {
  jsonl << "{\"subject\":\"" << subject << "\",\"report\":" << vw::to_json(rep) << "}\n";
  if (csv != nullptr) bounds_csv_rows(*csv, subject, rep);
}

// Reports for one parameter point; measured caps and mean-square surface
// come from a solved wave in a-posteriori mode, caps/f2 flags otherwise.
std::vector<vw::BoundReport> reports_for(const std::string& route, const vw::PhysicalParams& pp,
                                         double slope_cap, double convexity_cap, double eps,
                                         double f2_avg) {
  std::vector<vw::BoundReport> out;
  const bool adverse = pp.gamma > 0.0;
  if (route == "favorable" || (route == "auto" && !adverse)) {
    if (route == "favorable" && adverse)
      throw vw::ParameterError("favorable route needs gamma <= 0; use the adverse route");
    out.push_back(favorable_report(pp.g, pp.d, pp.gamma));
  }
  if (route == "quadratic" || (route == "auto" && adverse)) {
    out.push_back(vw::adverse_quadratic_bound(
        vw::adverse_DEF(pp, f2_avg, slope_cap, vw::AdverseRoute::slope_N)));
  }
  if (route == "quartic" || (route == "auto" && adverse)) {
    out.push_back(vw::adverse_quartic_bound(pp, convexity_cap, eps, f2_avg));
  }
  if (route == "smallness" || (route == "auto" && adverse)) {
    out.push_back(vw::smallness_N(pp, slope_cap));
    out.push_back(vw::smallness_M(pp, convexity_cap));
  }
  return out;
}

int run_bounds(const BoundsOpts& b) {
  const vw::Config file = load_optional_config(b.config);
  const std::string mode = b.mode;
  const std::string route = b.route;
  const std::vector<double> gammas =
      pick_nums(b.o_gammas, b.gammas, file, "gamma", std::vector<double>{-1.0});
  const double depth = pick_num(b.o_depth, b.depth, file, "depth", 1.0);
  const double gravity = pick_num(b.o_gravity, b.gravity, file, "gravity", 9.81);
  const double flux = pick_num(b.o_flux, b.flux, file, "flux", -1.0);
  const double eps = pick_num(b.o_eps, b.eps, file, "eps", 0.1);
  const double slope_cap = pick_num(b.o_slope, b.slope_cap, file, "bounds.slope_cap", 1.0);
  const double convexity_cap =
      pick_num(b.o_conv, b.convexity_cap, file, "bounds.convexity_cap", 1.0);
  const double f2 = pick_num(b.o_f2, b.f2, file, "bounds.f2", 0.0);
  const std::string out = pick_str(b.o_out, b.out, file, "out", "bounds.jsonl");
  if (gammas.empty()) throw vw::ParameterError("bounds needs at least one gamma value");

  vw::Config resolved;
  resolved.set("mode", mode);
  resolved.set("route", route);
  resolved.set("gamma", join_nums(gammas));
  resolved.set("depth", vw::format_g17(depth));
  resolved.set("gravity", vw::format_g17(gravity));
  resolved.set("flux", vw::format_g17(flux));
  resolved.set("eps", vw::format_g17(eps));
  resolved.set("bounds.slope_cap", vw::format_g17(slope_cap));
  resolved.set("bounds.convexity_cap", vw::format_g17(convexity_cap));
  resolved.set("bounds.f2", vw::format_g17(f2));
  if (!b.branch_path.empty()) resolved.set("branch", b.branch_path);
  resolved.set("out", out);

  auto jsonl = open_output(out);
  meta_line(jsonl, resolved);

  std::ofstream csv;
  std::ostream* csv_ptr = nullptr;
  const bool want_csv = mode == "aposteriori" || gammas.size() > 1;
  const std::string csv_path = sibling_path(out, ".margins.csv");
  if (want_csv) {
    csv = open_output(csv_path);
    csv << "# version=" << vw::kVersion << "\n";
    for (const auto& [k, v] : resolved.entries()) csv << "# " << k << "=" << v << "\n";
    csv << "subject,route,applicable,bound,envelope,condition,satisfied,margin\n";
    csv_ptr = &csv;
  }

  int n_reports = 0;
  if (mode == "apriori") {
    for (double gamma : gammas) {
      // The a-priori head and flux are the laminar ones for the given flux.
      const vw::PhysicalParams pp = vw::laminar_state(gravity, depth, gamma, flux);
      const std::string subject =
          "gamma=" + vw::format_g17(gamma) + " depth=" + vw::format_g17(depth);
      for (const auto& rep : reports_for(route, pp, slope_cap, convexity_cap, eps, f2)) {
        emit_report(jsonl, csv_ptr, subject, rep);
        ++n_reports;
      }
    }
  } else {
    if (b.branch_path.empty())
      throw vw::ParameterError("a-posteriori bounds need --branch <file>");
    std::ifstream is(b.branch_path, std::ios::binary);
    if (!is) throw vw::ParameterError("cannot open branch file: " + b.branch_path);
    const vw::BranchFile bf = vw::read_branch_jsonl(is);
    for (std::size_t i = 0; i < bf.result.points.size(); ++i) {
      const vw::BranchPoint& bp = bf.result.points[i];
      const vw::PhysicalParams& pp = bp.params;
      const vw::SurfaceProfile f = vw::eta_to_f(bp.eta, pp);
      const double f2_meas = vw::product_mean(f, f);
      const std::string subject =
          "point=" + std::to_string(i) + " s=" + vw::format_g17(bp.arclength_s);
      auto reps = reports_for(route, pp, bp.slope_N, bp.convexity_M, eps, f2_meas);
      for (auto& rep : reps) {
        append_amplitude_check(rep, bp.amplitude);
        emit_report(jsonl, csv_ptr, subject, rep);
        ++n_reports;
      }
    }
  }
  std::cout << "bounds: wrote " << n_reports << " reports to " << out;
  if (want_csv) std::cout << " and margins to " << csv_path;
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------- verify ---

struct VerifyOpts {
  std::string config, out, branch_path;
  int synthetic = 0;
  int seed = 1;
  std::vector<double> depths;
  CLI::Option *o_synth = nullptr, *o_seed = nullptr, *o_depths = nullptr, *o_out = nullptr;
};

int run_verify(const VerifyOpts& v) {
  const vw::Config file = load_optional_config(v.config);
  const int synthetic = pick_int(v.o_synth, v.synthetic, file, "synthetic", 0);
  const int seed = pick_int(v.o_seed, v.seed, file, "seed", 1);
  const std::vector<double> depths =
      pick_nums(v.o_depths, v.depths, file, "depth", std::vector<double>{0.25, 1.0, 4.0});
  const std::string out = pick_str(v.o_out, v.out, file, "out", "audit.csv");
  const bool have_branch = !v.branch_path.empty();
  if (have_branch == (synthetic > 0))
    throw vw::ParameterError("verify needs exactly one input: --branch <file> or --synthetic <n>");

  vw::Config resolved;
  if (have_branch) resolved.set("branch", v.branch_path);
  if (synthetic > 0) {
    resolved.set("synthetic", std::to_string(synthetic));
    resolved.set("seed", std::to_string(seed));
    resolved.set("depth", join_nums(depths));
  }
  resolved.set("out", out);

  std::vector<vw::AuditReport> reports;
  if (have_branch) {
    std::ifstream is(v.branch_path, std::ios::binary);
    if (!is) throw vw::ParameterError("cannot open branch file: " + v.branch_path);
    vw::BranchFile bf;
    try {
      bf = vw::read_branch_jsonl(is);
    } catch (const std::exception& e) {
      std::cerr << "verify: corrupted branch file: " << e.what() << "\n";
      return 4;
    }
    if (!bf.result.points.empty())
      reports.push_back(vw::audit_kernel(bf.result.points.front().params.d));
    for (std::size_t i = 0; i < bf.result.points.size(); ++i) {
      const vw::BranchPoint& bp = bf.result.points[i];
      const std::string tag = " point=" + std::to_string(i);
      auto sec = vw::audit_section_three(bp.params, bp);
      sec.subject += tag;
      reports.push_back(std::move(sec));
      auto ct = vw::audit_crest_trough(bp.params, bp);
      ct.subject += tag;
      reports.push_back(std::move(ct));
      const vw::SurfaceProfile f = vw::eta_to_f(bp.eta, bp.params);
      auto quad = vw::audit_quadratic_lower(f, bp.params.d);
      quad.subject += tag;
      reports.push_back(std::move(quad));
      auto cub = vw::audit_cubic_upper(f, bp.params);
      cub.subject += tag;
      reports.push_back(std::move(cub));
    }
  } else {
    for (double d : depths) reports.push_back(vw::audit_kernel(d));
    vw::Rng rng(static_cast<std::uint64_t>(seed));
    const vw::Grid grid(64);
    for (int i = 0; i < synthetic; ++i) {
      const double d = depths[static_cast<std::size_t>(i) % depths.size()];
      const vw::SurfaceProfile f = vw::random_admissible_profile(rng, grid);
      const vw::PhysicalParams pp = vw::laminar_state(9.81, d, 0.0, -1.0);
      const std::string tag = " sample=" + std::to_string(i);
      auto quad = vw::audit_quadratic_lower(f, d);
      quad.subject += tag;
      reports.push_back(std::move(quad));
      auto cub = vw::audit_cubic_upper(f, pp);
      cub.subject += tag;
      reports.push_back(std::move(cub));
    }
  }

  auto os = open_output(out);
  vw::write_audit_csv(os, reports, resolved);

  int n_checks = 0, n_failed = 0;
  for (const auto& rep : reports) {
    n_checks += static_cast<int>(rep.checks.size());
    if (!rep.overall) {
      ++n_failed;
      for (const auto& c : rep.checks) {
        if (!c.pass)
          std::cerr << "verify: FAIL " << rep.subject << ": " << c.name
                    << " lhs=" << vw::format_g17(c.lhs) << " rhs=" << vw::format_g17(c.rhs)
                    << "\n";
      }
      if (rep.inconclusive)
        std::cerr << "verify: INCONCLUSIVE " << rep.subject << " (hypotheses unmet)\n";
    }
  }
  std::cout << "verify: " << reports.size() << " subjects, " << n_checks << " checks, "
            << n_failed << " failing subjects; wrote " << out << "\n";
  return n_failed == 0 ? 0 : 4;
}

// ----------------------------------------------------------------- sweep ---

struct SweepOpts {
  std::string config, out;
  std::vector<double> gammas, depths;
  double gravity = 9.81;
  int grid = 128, workers = 0;
  CLI::Option *o_gammas = nullptr, *o_depths = nullptr, *o_gravity = nullptr, *o_grid = nullptr,
              *o_workers = nullptr, *o_out = nullptr;
};

struct TupleRun {
  bool ok = false;
  std::string error;
  vw::BifurcationPoint bif{};
  vw::BranchResult br{};
};

int run_sweep(const SweepOpts& s) {
  const vw::Config file = load_optional_config(s.config);
  const std::vector<double> gammas =
      pick_nums(s.o_gammas, s.gammas, file, "gamma", std::vector<double>{-0.5, -1.0, -5.0});
  const std::vector<double> depths =
      pick_nums(s.o_depths, s.depths, file, "depth", std::vector<double>{1.0});
  const double gravity = pick_num(s.o_gravity, s.gravity, file, "gravity", 9.81);
  const int grid_n = pick_int(s.o_grid, s.grid, file, "grid", 128);
  const int workers_flag = pick_int(s.o_workers, s.workers, file, "workers", 0);
  const std::string out_dir = pick_str(s.o_out, s.out, file, "out", "sweep_out");
  if (gammas.empty() || depths.empty())
    throw vw::ParameterError("sweep needs at least one gamma and one depth");
  const vw::ContinuationConfig cc = continuation_from(file);

  vw::Config resolved;
  resolved.set("gamma", join_nums(gammas));
  resolved.set("depth", join_nums(depths));
  resolved.set("gravity", vw::format_g17(gravity));
  resolved.set("grid", std::to_string(grid_n));
  resolved.set("workers", std::to_string(workers_flag));
  resolved.set("out", out_dir);
  embed_continuation(resolved, cc);

  std::vector<std::pair<double, double>> tuples;
  for (double gamma : gammas)
    for (double d : depths) tuples.emplace_back(gamma, d);

  std::vector<TupleRun> runs(tuples.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tuples.size()) return;
      const auto [gamma, d] = tuples[k];
      try {
        runs[k].bif = vw::find_bifurcation(gravity, d, gamma);
        runs[k].br = vw::continue_branch(gravity, d, gamma, vw::Grid(grid_n), cc);
        runs[k].ok = true;
      } catch (const std::exception& e) {
        runs[k].error = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_workers =
      workers_flag > 0 ? static_cast<std::size_t>(workers_flag)
                       : std::min<std::size_t>(hw, tuples.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  // Artifacts are written by tuple index, independent of completion order.
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  auto sw = open_output((dir / "sweep.csv").string());
  sw << "# version=" << vw::kVersion << "\n";
  for (const auto& [k, v] : resolved.entries()) sw << "# " << k << "=" << v << "\n";
  sw << "index,gamma,depth,status,stop,points,max_amplitude,max_residual,bound,bound_margin\n";

  int n_failed = 0;
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const auto [gamma, d] = tuples[k];
    vw::Config tuple_cfg = resolved;
    tuple_cfg.set("gamma", vw::format_g17(gamma));
    tuple_cfg.set("depth", vw::format_g17(d));
    std::string status = "ok", stop, bound_s, margin_s;
    std::size_t n_points = 0;
    double max_amp = 0.0, max_res = 0.0;
    if (runs[k].ok) {
      const std::string base = "branch_" + std::to_string(k);
      auto bj = open_output((dir / (base + ".jsonl")).string());
      vw::write_branch_jsonl(bj, runs[k].bif, runs[k].br, tuple_cfg);
      auto bc = open_output((dir / (base + ".summary.csv")).string());
      vw::write_summary_csv(bc, runs[k].br, tuple_cfg);
      n_points = runs[k].br.points.size();
      stop = vw::to_string(runs[k].br.stop.kind);
      for (const auto& p : runs[k].br.points) {
        max_amp = std::max(max_amp, p.amplitude);
        max_res = std::max(max_res, p.residuals.babenko_res);
      }
      if (gamma <= 0.0) {
        const double bound = vw::favorable_bound(gravity, d, gamma);
        bound_s = vw::format_g17(bound);
        margin_s = vw::format_g17(rel_margin(max_amp, bound));
      }
    } else {
      ++n_failed;
      status = "failed";
      stop = runs[k].error;
      for (char& ch : stop)
        if (ch == ',' || ch == '\n') ch = ';';
    }
    sw << k << ',' << vw::format_g17(gamma) << ',' << vw::format_g17(d) << ',' << status << ','
       << stop << ',' << n_points << ',' << vw::format_g17(max_amp) << ','
       << vw::format_g17(max_res) << ',' << bound_s << ',' << margin_s << "\n";
    std::cout << "sweep[" << k << "]: gamma=" << vw::format_g17(gamma)
              << " depth=" << vw::format_g17(d) << " " << status
              << (runs[k].ok ? " points=" + std::to_string(n_points) : " " + stop) << "\n";
  }
  std::cout << "sweep: wrote " << (dir / "sweep.csv").string() << " ("
            << (tuples.size() - n_failed) << "/" << tuples.size() << " tuples ok)\n";
  return n_failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "steady periodic gravity water waves with constant vorticity: "
      "spectral solver, branch continuation, and amplitude-bound audits"};
  app.require_subcommand(1);

  KernelOpts K;
  auto* ck = app.add_subcommand("kernel", "tabulate the strip convolution kernel to CSV");
  ck->add_option("--config", K.config, "key=value config file");
  K.o_depth = ck->add_option("--depth", K.depth, "strip depth d > 0");
  K.o_from = ck->add_option("--from", K.from, "first sample point, > 0");
  K.o_to = ck->add_option("--to", K.to, "last sample point, < 2*pi");
  K.o_samples = ck->add_option("--samples", K.samples, "number of samples");
  K.o_out = ck->add_option("--out", K.out, "output CSV path");

  SolveOpts S;
  auto* cs = app.add_subcommand("solve", "Newton-solve one wave at fixed flux (free head Q)");
  cs->add_option("--config", S.config, "key=value config file");
  S.o_gamma = cs->add_option("--gamma", S.gamma, "constant vorticity");
  S.o_depth = cs->add_option("--depth", S.depth, "conformal mean depth");
  S.o_gravity = cs->add_option("--gravity", S.gravity, "gravity");
  S.o_flux = cs->add_option("--flux", S.flux, "relative mass flux m < 0");
  S.o_perturb = cs->add_option("--perturb", S.perturb, "seed cosine amplitude");
  S.o_grid = cs->add_option("--grid", S.grid, "collocation points (even)");
  S.o_out = cs->add_option("--out", S.out, "output JSONL path");

  BranchOpts B;
  auto* cb = app.add_subcommand("branch", "trace the wave branch from its bifurcation point");
  cb->add_option("--config", B.config, "key=value config file");
  B.o_gamma = cb->add_option("--gamma", B.gamma, "constant vorticity");
  B.o_depth = cb->add_option("--depth", B.depth, "conformal mean depth");
  B.o_gravity = cb->add_option("--gravity", B.gravity, "gravity");
  B.o_grid = cb->add_option("--grid", B.grid, "collocation points (even)");
  B.o_out = cb->add_option("--out", B.out, "output JSONL path (summary CSV written alongside)");

  BoundsOpts Bo;
  auto* cbo = app.add_subcommand("bounds", "evaluate amplitude bounds and smallness gates");
  cbo->add_option("--config", Bo.config, "key=value config file");
  cbo->add_option("--mode", Bo.mode, "apriori (parameters only) or aposteriori (branch file)")
      ->check(CLI::IsMember({"apriori", "aposteriori"}));
  cbo->add_option("--route", Bo.route, "bound route")
      ->check(CLI::IsMember({"auto", "favorable", "quadratic", "quartic", "smallness"}));
  cbo->add_option("--branch", Bo.branch_path, "branch JSONL input (aposteriori)");
  Bo.o_gammas = cbo->add_option("--gamma", Bo.gammas, "vorticity (repeatable or comma list)")
                    ->delimiter(',');
  Bo.o_depth = cbo->add_option("--depth", Bo.depth, "conformal mean depth");
  Bo.o_gravity = cbo->add_option("--gravity", Bo.gravity, "gravity");
  Bo.o_flux = cbo->add_option("--flux", Bo.flux, "relative mass flux m < 0");
  Bo.o_eps = cbo->add_option("--eps", Bo.eps, "quartic route probe excess, > 0");
  Bo.o_slope = cbo->add_option("--slope-cap", Bo.slope_cap, "a-priori slope cap N");
  Bo.o_conv = cbo->add_option("--convexity-cap", Bo.convexity_cap, "a-priori convexity cap M");
  Bo.o_f2 = cbo->add_option("--f2", Bo.f2, "a-priori mean of f^2 (0 = worst case)");
  Bo.o_out = cbo->add_option("--out", Bo.out, "output JSONL path");

  VerifyOpts V;
  auto* cv = app.add_subcommand("verify", "audit the supporting inequalities and identities");
  cv->add_option("--config", V.config, "key=value config file");
  cv->add_option("--branch", V.branch_path, "branch JSONL to audit");
  V.o_synth = cv->add_option("--synthetic", V.synthetic, "audit n random admissible profiles");
  V.o_seed = cv->add_option("--seed", V.seed, "random seed for synthetic profiles");
  V.o_depths = cv->add_option("--depth", V.depths, "depth cycle for synthetic audits")
                   ->delimiter(',');
  V.o_out = cv->add_option("--out", V.out, "output CSV path");

  SweepOpts W;
  auto* cw = app.add_subcommand("sweep", "trace branches over a parameter grid in parallel");
  cw->add_option("--config", W.config, "key=value config file");
  W.o_gammas = cw->add_option("--gamma", W.gammas, "vorticity values (repeatable or comma list)")
                   ->delimiter(',');
  W.o_depths = cw->add_option("--depth", W.depths, "depth values (repeatable or comma list)")
                   ->delimiter(',');
  W.o_gravity = cw->add_option("--gravity", W.gravity, "gravity");
  W.o_grid = cw->add_option("--grid", W.grid, "collocation points (even)");
  W.o_workers = cw->add_option("--workers", W.workers, "worker threads (0 = hardware)");
  W.o_out = cw->add_option("--out", W.out, "output directory");

  int rc = 0;
  ck->callback([&]() { rc = run_kernel(K); });
  cs->callback([&]() { rc = run_solve(S); });
  cb->callback([&]() { rc = run_branch(B); });
  cbo->callback([&]() { rc = run_bounds(Bo); });
  cv->callback([&]() { rc = run_verify(V); });
  cw->callback([&]() { rc = run_sweep(W); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const vw::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vw::SingularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vw::ScanError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.scan_record;
    return 3;
  } catch (const vw::ConvergenceError& e) {
    std::cerr << "error: " << e.what()
              << " (last residual " << vw::format_g17(e.last_residual) << ")\n";
    return 3;
  } catch (const vw::DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
