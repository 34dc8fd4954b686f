#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "g4/catalog.hpp"
#include "g4/checks.hpp"
#include "g4/mechanics.hpp"

namespace g4::cli {

inline constexpr const char* kToolName = "g4";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchema = 1;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kJson, kCsv, kHuman };

struct RunConfig {
  std::vector<GroupId> groups;  // resolved selector
  std::string group_selector = "all";
  GroupParams params;
  std::vector<std::string> param_overrides;  // as given, for the config echo
  std::size_t n_points = 200;
  std::uint64_t seed = 42;
  ToleranceConfig tolerances;
  Format format = Format::kJson;
  std::optional<std::string> out;
};

/// "all" or a single group key. Throws UsageError.
std::vector<GroupId> resolve_groups(const std::string& selector);
/// Applies one key=value override. Throws UsageError.
void apply_param(GroupParams& params, const std::string& assignment);
/// Parses "a,b,c,d". Throws UsageError.
Vec4 parse_vec4(const std::string& text);
/// G4_SEED if set; throws UsageError when it is not an unsigned integer.
std::optional<std::uint64_t> seed_from_env();
Format parse_format(const std::string& text);

enum class Status { kPass, kFail, kFlag };
Status status_of(const CheckResult& r);
std::string_view status_name(Status s);

struct GroupSummary {
  GroupId id;
  int pass = 0;
  int fail = 0;
  int flag = 0;
};

struct VerificationReport {
  RunConfig config;
  std::vector<CheckResult> results;
  std::vector<GroupSummary> summary;
  std::vector<std::pair<GroupId, std::string>> inconsistencies;

  bool all_asserted_pass() const;
};

/// Runs the full suite for every selected group. Throws InvalidParams.
VerificationReport run_verify(const RunConfig& config);

nlohmann::ordered_json report_to_json(const VerificationReport& report);
void write_report(std::ostream& os, const VerificationReport& report, Format format);

nlohmann::ordered_json catalog_to_json(const RunConfig& config);
void write_catalog(std::ostream& os, const RunConfig& config, Format format);

struct SimulateConfig {
  RunConfig run;
  PhasePoint state0{{0.0, 0.0, 0.0, 0.0}, {0.1, 0.2, 0.3, 0.4}};
  double T = 10.0;
  double h = 1e-3;
};

nlohmann::ordered_json drift_to_json(const SimulateConfig& config, const Trajectory& traj);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace g4::cli
