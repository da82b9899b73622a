#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vorwave/bounds.hpp"
#include "vorwave/kernel.hpp"
#include "vorwave/solver.hpp"
#include "vorwave/verify.hpp"

namespace vorwave {

// All numeric output is decimal with 17 significant digits so parsing the
// file back reproduces every double bit-for-bit.
std::string format_g17(double v);

// Flat key=value configuration with [section] headers flattened into
// "section.key". Later set() calls override earlier values (flag layering).
class Config {
 public:
  bool has(const std::string& key) const;
  void set(const std::string& key, std::string value);
  std::string get_str(const std::string& key, const std::string& fallback) const;
  double get_num(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // insertion order
};

Config parse_config_text(const std::string& text);
Config load_config_file(const std::string& path);

// Single-line JSON fragments (no trailing newline).
std::string to_json(const PhysicalParams& pp);
std::string to_json(const ResidualReport& rr);
std::string to_json(const BranchPoint& bp);
std::string to_json(const BifurcationPoint& bif);
std::string to_json(const StoppingReason& stop);
std::string to_json(const BoundReport& rep);
std::string to_json(const AuditReport& rep);
std::string config_json(const Config& cfg);

// Branch file: one JSON object per line. First line {"meta": {version,
// config}}, then {"bifurcation": {...}}, one {"point": {...}} per branch
// point, and a final {"stopping": {...}}.
struct BranchFile {
  std::string version;
  std::vector<std::pair<std::string, std::string>> config;
  BifurcationPoint bifurcation;
  BranchResult result;
};

void write_branch_jsonl(std::ostream& os, const BifurcationPoint& bif,
                        const BranchResult& branch, const Config& resolved);
BranchFile read_branch_jsonl(std::istream& is);

// Summary CSV: "# key=value" comment lines echoing the config, a header row,
// then one row per branch point. Comma-separated, LF line endings.
void write_summary_csv(std::ostream& os, const BranchResult& branch, const Config& resolved);

// Kernel table CSV: columns s, beta, beta_prime.
void write_kernel_csv(std::ostream& os, const KernelTable& table, const Config& resolved);

// Audit batch CSV: one row per check per subject.
void write_audit_csv(std::ostream& os, const std::vector<AuditReport>& reports,
                     const Config& resolved);

}  // namespace vorwave
