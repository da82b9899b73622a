#include "vorwave/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/version.hpp"

namespace vorwave {

std::string format_g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

namespace {

std::string trim(std::string_view sv) {
  size_t a = 0, b = sv.size();
  while (a < b && std::isspace(static_cast<unsigned char>(sv[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(sv[b - 1]))) --b;
  return std::string(sv.substr(a, b - a));
}

void append_escaped(std::string& s, std::string_view v) {
  s += '"';
  for (char ch : v) {
    switch (ch) {
      case '"': s += "\\\""; break;
      case '\\': s += "\\\\"; break;
      case '\n': s += "\\n"; break;
      case '\t': s += "\\t"; break;
      case '\r': s += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char b[8];
          std::snprintf(b, sizeof b, "\\u%04x", ch);
          s += b;
        } else {
          s += ch;
        }
    }
  }
  s += '"';
}

std::string json_num(double v) {
  if (!std::isfinite(v)) return "null";
  return format_g17(v);
}

void append_coeff_array(std::string& s, const std::vector<double>& a) {
  s += '[';
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += json_num(a[i]);
  }
  s += ']';
}

}  // namespace

bool Config::has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

void Config::set(const std::string& key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(key, std::move(value));
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return fallback;
}

double Config::get_num(const std::string& key, double fallback) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) {
      try {
        size_t used = 0;
        const double out = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return out;
      } catch (const std::exception&) {
      }
      throw ParameterError("config value for '" + key + "' is not a number: " + v);
    }
  }
  return fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  const double v = get_num(key, static_cast<double>(fallback));
  const int out = static_cast<int>(v);
  if (static_cast<double>(out) != v) {
    throw ParameterError("config value for '" + key + "' is not an integer");
  }
  return out;
}

Config parse_config_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw ParameterError("config line " + std::to_string(lineno) +
                             ": malformed section header: " + t);
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(lineno) +
                           ": expected key=value, got: " + t);
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw ParameterError("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.set(section.empty() ? key : section + "." + key, trim(t.substr(eq + 1)));
  }
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string to_json(const PhysicalParams& pp) {
  std::string s = "{\"g\":" + json_num(pp.g) + ",\"d\":" + json_num(pp.d) +
                  ",\"gamma\":" + json_num(pp.gamma) + ",\"m\":" + json_num(pp.m) +
                  ",\"Q\":" + json_num(pp.Q) + "}";
  return s;
}

std::string to_json(const ResidualReport& rr) {
  return "{\"dynamic_res\":" + json_num(rr.dynamic_res) +
         ",\"babenko_res\":" + json_num(rr.babenko_res) +
         ",\"averages_res\":" + json_num(rr.averages_res) +
         ",\"f_eq_res\":" + json_num(rr.f_eq_res) +
         ",\"no_stagnation_margin\":" + json_num(rr.no_stagnation_margin) +
         ",\"nodal_ok\":" + (rr.nodal_ok ? "true" : "false") + "}";
}

std::string to_json(const BranchPoint& bp) {
  std::string s = "{\"s\":" + json_num(bp.arclength_s) +
                  ",\"amplitude\":" + json_num(bp.amplitude) +
                  ",\"slope_N\":" + json_num(bp.slope_N) +
                  ",\"convexity_M\":" + json_num(bp.convexity_M) +
                  ",\"params\":" + to_json(bp.params) +
                  ",\"residuals\":" + to_json(bp.residuals) +
                  ",\"grid_points\":" + std::to_string(bp.eta.grid().n_points()) +
                  ",\"eta_cos\":";
  append_coeff_array(s, bp.eta.cos_coeffs());
  if (bp.eta.parity() != Parity::even) {
    s += ",\"eta_sin\":";
    append_coeff_array(s, bp.eta.sin_coeffs());
  }
  s += "}";
  return s;
}

std::string to_json(const BifurcationPoint& bif) {
  return "{\"m_star\":" + json_num(bif.m_star) + ",\"Q_star\":" + json_num(bif.Q_star) +
         ",\"mode\":" + std::to_string(bif.mode) +
         ",\"sigma_min\":" + json_num(bif.sigma_min) +
         ",\"sigma_max\":" + json_num(bif.sigma_max) + "}";
}

std::string to_json(const StoppingReason& stop) {
  std::string s = "{\"kind\":";
  append_escaped(s, to_string(stop.kind));
  s += ",\"evidence\":";
  append_escaped(s, stop.evidence);
  s += "}";
  return s;
}

std::string to_json(const BoundReport& rep) {
  std::string s = "{\"route\":";
  append_escaped(s, to_string(rep.route));
  s += ",\"applicable\":";
  s += rep.applicable ? "true" : "false";
  s += ",\"bound_value\":";
  s += rep.bound_value ? json_num(*rep.bound_value) : "null";
  s += ",\"envelope\":";
  s += rep.envelope ? json_num(*rep.envelope) : "null";
  s += ",\"conditions\":[";
  for (size_t i = 0; i < rep.conditions.size(); ++i) {
    const auto& c = rep.conditions[i];
    if (i) s += ',';
    s += "{\"name\":";
    append_escaped(s, c.name);
    s += ",\"satisfied\":";
    s += c.satisfied ? "true" : "false";
    s += ",\"margin\":" + json_num(c.margin) + "}";
  }
  s += "]}";
  return s;
}

std::string to_json(const AuditReport& rep) {
  std::string s = "{\"subject\":";
  append_escaped(s, rep.subject);
  s += ",\"overall\":";
  s += rep.overall ? "true" : "false";
  s += ",\"inconclusive\":";
  s += rep.inconclusive ? "true" : "false";
  s += ",\"checks\":[";
  for (size_t i = 0; i < rep.checks.size(); ++i) {
    const auto& c = rep.checks[i];
    if (i) s += ',';
    s += "{\"name\":";
    append_escaped(s, c.name);
    s += ",\"lhs\":" + json_num(c.lhs) + ",\"rhs\":" + json_num(c.rhs) + ",\"relation\":";
    append_escaped(s, c.relation);
    s += ",\"margin\":" + json_num(c.margin) + ",\"pass\":";
    s += c.pass ? "true" : "false";
    s += ",\"degenerate\":";
    s += c.degenerate ? "true" : "false";
    s += "}";
  }
  s += "]}";
  return s;
}

std::string config_json(const Config& cfg) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : cfg.entries()) {
    if (!first) s += ',';
    first = false;
    append_escaped(s, k);
    s += ':';
    append_escaped(s, v);
  }
  s += "}";
  return s;
}

void write_branch_jsonl(std::ostream& os, const BifurcationPoint& bif,
                        const BranchResult& branch, const Config& resolved) {
  os << "{\"meta\":{\"version\":\"" << kVersion << "\",\"config\":" << config_json(resolved)
     << "}}\n";
  os << "{\"bifurcation\":" << to_json(bif) << "}\n";
  for (const auto& bp : branch.points) os << "{\"point\":" << to_json(bp) << "}\n";
  os << "{\"stopping\":" << to_json(branch.stop) << "}\n";
}

namespace {

StopKind stop_kind_from(const std::string& name) {
  for (StopKind k : {StopKind::norm_blowup, StopKind::flux_energy_blowup,
                     StopKind::stagnation_approach, StopKind::self_intersection,
                     StopKind::max_points, StopKind::step_collapse}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown stopping kind: " + name);
}

}  // namespace

BranchFile read_branch_jsonl(std::istream& is) {
  using nlohmann::json;
  BranchFile out;
  std::string line;
  int lineno = 0;
  bool saw_meta = false, saw_stop = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParameterError("branch file line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (j.contains("meta")) {
        out.version = j["meta"].value("version", "");
        if (j["meta"].contains("config")) {
          for (const auto& [k, v] : j["meta"]["config"].items()) {
            out.config.emplace_back(k, v.get<std::string>());
          }
        }
        saw_meta = true;
      } else if (j.contains("bifurcation")) {
        const json& b = j["bifurcation"];
        out.bifurcation = {b.at("m_star").get<double>(), b.at("Q_star").get<double>(),
                           b.at("mode").get<int>(), b.at("sigma_min").get<double>(),
                           b.at("sigma_max").get<double>()};
      } else if (j.contains("point")) {
        const json& p = j["point"];
        BranchPoint bp;
        const json& pp = p.at("params");
        bp.params = {pp.at("g").get<double>(), pp.at("d").get<double>(),
                     pp.at("gamma").get<double>(), pp.at("m").get<double>(),
                     pp.at("Q").get<double>()};
        bp.arclength_s = p.at("s").get<double>();
        bp.amplitude = p.at("amplitude").get<double>();
        bp.slope_N = p.at("slope_N").get<double>();
        bp.convexity_M = p.at("convexity_M").get<double>();
        const json& rr = p.at("residuals");
        bp.residuals = {rr.at("dynamic_res").get<double>(),
                        rr.at("babenko_res").get<double>(),
                        rr.at("averages_res").get<double>(),
                        rr.at("f_eq_res").get<double>(),
                        rr.at("no_stagnation_margin").get<double>(),
                        rr.at("nodal_ok").get<bool>()};
        const Grid grid(p.at("grid_points").get<int>());
        std::vector<double> cc = p.at("eta_cos").get<std::vector<double>>();
        if (p.contains("eta_sin")) {
          bp.eta = SurfaceProfile::from_coeffs(grid, std::move(cc),
                                               p.at("eta_sin").get<std::vector<double>>());
        } else {
          bp.eta = SurfaceProfile::from_cos(grid, std::move(cc));
        }
        out.result.points.push_back(std::move(bp));
      } else if (j.contains("stopping")) {
        out.result.stop = {stop_kind_from(j["stopping"].at("kind").get<std::string>()),
                           j["stopping"].at("evidence").get<std::string>()};
        saw_stop = true;
      } else {
        throw ParameterError("branch file line " + std::to_string(lineno) +
                             ": unrecognized record");
      }
    } catch (const json::exception& e) {
      throw ParameterError("branch file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!saw_meta || !saw_stop) {
    throw ParameterError("branch file is truncated: missing meta or stopping record");
  }
  return out;
}

void write_summary_csv(std::ostream& os, const BranchResult& branch, const Config& resolved) {
  os << "# version=" << kVersion << "\n";
  for (const auto& [k, v] : resolved.entries()) os << "# " << k << "=" << v << "\n";
  os << "s,amplitude,slope_N,convexity_M,Q,m,stagnation_margin,babenko_res,averages_res\n";
  for (const auto& bp : branch.points) {
    os << format_g17(bp.arclength_s) << ',' << format_g17(bp.amplitude) << ','
       << format_g17(bp.slope_N) << ',' << format_g17(bp.convexity_M) << ','
       << format_g17(bp.params.Q) << ',' << format_g17(bp.params.m) << ','
       << format_g17(bp.residuals.no_stagnation_margin) << ','
       << format_g17(bp.residuals.babenko_res) << ','
       << format_g17(bp.residuals.averages_res) << "\n";
  }
}

void write_kernel_csv(std::ostream& os, const KernelTable& table, const Config& resolved) {
  os << "# version=" << kVersion << "\n";
  for (const auto& [k, v] : resolved.entries()) os << "# " << k << "=" << v << "\n";
  os << "# depth=" << format_g17(table.depth)
     << " truncation_terms=" << table.truncation_terms
     << " tail_bound=" << format_g17(table.tail_bound) << "\n";
  os << "s,beta,beta_prime\n";
  for (const auto& row : table.samples) {
    os << format_g17(row.s) << ',' << format_g17(row.beta) << ','
       << format_g17(row.beta_prime) << "\n";
  }
}

void write_audit_csv(std::ostream& os, const std::vector<AuditReport>& reports,
                     const Config& resolved) {
  os << "# version=" << kVersion << "\n";
  for (const auto& [k, v] : resolved.entries()) os << "# " << k << "=" << v << "\n";
  os << "subject,check,relation,lhs,rhs,margin,pass,degenerate\n";
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      os << rep.subject << ',' << c.name << ',' << c.relation << ',' << format_g17(c.lhs)
         << ',' << format_g17(c.rhs) << ',' << format_g17(c.margin) << ','
         << (c.pass ? 1 : 0) << ',' << (c.degenerate ? 1 : 0) << "\n";
    }
  }
}

}  // namespace vorwave
