#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/real.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace xiforge {

using Params = std::map<std::string, std::string>;

/// Outcome of one identity check. passed <=> abs_diff <= tolerance or
/// rel_diff <= tolerance; a mathematical failure is recorded in `notes` with
/// passed = false and NaN differences.
struct IdentityReport {
  std::string identity_id;
  Params parameters;
  Complex lhs{0, 0};
  Complex rhs{0, 0};
  Real abs_diff = 0;
  Real rel_diff = 0;
  Real tolerance = 0;
  bool passed = false;
  double wall_time = 0;  // seconds
  std::string notes;
};

struct IdentityInfo {
  std::string id;
  std::string summary;
  /// Parameter names with their defaults.
  Params defaults;
  double tolerance;
};

/// Registered identities in registry order.
const std::vector<IdentityInfo>& identity_registry();

/// Short ids accepted in place of registry ids.
const std::map<std::string, std::string>& identity_aliases();

/// Resolves an alias; returns the input if it is already a registry id.
std::string canonical_identity(const std::string& id);

/// Runs one identity. Throws UsageError for an unknown id (message lists the
/// registry) or for unknown/unparsable parameters.
IdentityReport run_identity(const std::string& identity_id, const Params& params,
                            const PrecisionConfig& cfg);

const std::vector<std::string>& suite_names();

/// The (identity, parameters) grid of a suite.
std::vector<std::pair<std::string, Params>> suite_plan(const std::string& suite);

/// Runs a suite on `threads` workers; reports come back in plan order.
std::vector<IdentityReport> run_suite(const std::string& suite, const PrecisionConfig& cfg,
                                      int threads = 1);

inline constexpr int kReportSchemaVersion = 1;

/// One JSON object per line, fixed field order. wall_time only if requested.
std::string report_json_line(const IdentityReport& r, bool include_timing = false);

/// Header plus one row per report.
void write_csv_summary(std::ostream& out, const std::vector<IdentityReport>& reports);

/// Parses "2", "-1.5", "3+1i", "0.5-14.13i", "2i".
Complex parse_complex(const std::string& text);

}  // namespace xiforge
