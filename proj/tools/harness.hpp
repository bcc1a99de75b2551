#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entcont/bounds.hpp"
#include "entcont/entanglement.hpp"
#include "entcont/states.hpp"

namespace entcont::harness {

enum class Command { VerifyFannes, VerifyPure, VerifyEof, Tightness, Compute, DemoMonotone };
enum class ReportFormat { Csv, Json };
enum class TightnessPolicy { FixedEps, FixedT };

Command parse_command(std::string_view name);
std::string_view to_string(Command command);

struct CampaignConfig {
  Command command = Command::VerifyFannes;
  int trials = 100;
  std::vector<BipartiteDims> dims{{2, 2}};
  std::vector<double> amplitudes{1.0};
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out_path;
  ReportFormat format = ReportFormat::Csv;
  EofProvider provider = EofProvider::Oracle;
  OptimizerConfig optimizer{};
  bool chain = false;
  int threads = 1;
};

struct CampaignSummary {
  std::size_t total = 0;
  std::size_t violations = 0;          // unsatisfied rows of any class
  std::size_t theorem_violations = 0;  // unsatisfied theorem-class rows
  double worst_slack = 0.0;
  std::map<std::string, std::size_t> regime_counts;
  double wall_time = 0.0;  // seconds
};

struct CampaignResult {
  CampaignSummary summary;
  std::vector<BoundReport> rows;
};

/// Runs a verify-* campaign. Rows come back (and are written, when out_path
/// is set) in (dims, amplitude, trial) order whatever the thread count.
CampaignResult run_campaign(const CampaignConfig& config);

/// Stream index of a trial; every trial draws from make_engine({seed, stream}).
std::uint64_t trial_stream(const CampaignConfig& config, std::size_t dims_index,
                           std::size_t amplitude_index, int trial);

inline constexpr std::string_view kCsvHeader =
    "name,dA,dB,lhs,rhs,slack,satisfied,regime_ok,distance,provider,seed,stream";

std::string csv_row(const BoundReport& report);
void write_reports(std::ostream& out, const std::vector<BoundReport>& rows, ReportFormat format);
void print_summary(std::ostream& out, const CampaignSummary& summary);

// --- single computations ---------------------------------------------------

enum class Measure { Entropy, TraceDistance, Fidelity, Bures, PureE, Eof2q, EofMin, Tilde };

Measure parse_measure(std::string_view name);
bool needs_second_state(Measure measure);

/// bell | product | maximally-mixed:d | maximally-mixed:dAxdB | werner:p |
/// tightness:d:eps
BipartiteState named_state(std::string_view text);

double compute_single(Measure measure, const BipartiteState& state,
                      const std::optional<BipartiteState>& second = std::nullopt,
                      const OptimizerConfig& optimizer = {});

/// Ten significant digits, trailing zeros kept ("1.000000000").
std::string format_value(double value);

// --- tightness table -------------------------------------------------------

struct TightnessTable {
  std::vector<TightnessRow> rows;
  LinearFit fit;
};

TightnessTable emit_tightness_table(const std::vector<Index>& d_list, TightnessPolicy policy,
                                    double parameter);
void write_tightness(std::ostream& out, const TightnessTable& table, ReportFormat format);

// --- parsing helpers shared with the CLI ------------------------------------

std::vector<BipartiteDims> parse_dims_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
std::vector<Index> parse_index_list(std::string_view text);

}  // namespace entcont::harness
