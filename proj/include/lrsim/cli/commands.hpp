#pragma once

#include <array>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "lrsim/belltests.hpp"
#include "lrsim/engine.hpp"

namespace lrsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Relative paths land under $LRSIM_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::filesystem::path& requested,
                                     const std::string& default_name);

/// Evenly spaced grid with exact endpoints: from + (to - from) * i / (n - 1).
std::vector<double> linear_grid(double from, double to, std::size_t points);

struct ScanOptions {
  Side side = Side::A;
  double from = 0.0;
  double to = kPi;
  std::size_t points = 19;
  std::filesystem::path out;
};

/// Sweeps one setting, writes the CSV and manifest, prints a summary block.
void cmd_scan(const ExperimentConfig& config, const ScanOptions& options, std::ostream& out);

std::string scan_csv(std::span<const double> settings, std::span<const CoincidenceCounts> counts);

enum class BellTestKind { Chsh, Ch74 };
enum class BellMode { MonteCarlo, Analytic, Quantum };

struct BellOptions {
  BellTestKind test = BellTestKind::Chsh;
  BellMode mode = BellMode::MonteCarlo;
  std::array<double, 4> angles{};  ///< a, a', b, b'
  std::filesystem::path report;
};

struct BellReport {
  BellResult result;
  std::array<ChannelTable, 4> tables;  ///< (a,b), (a,b'), (a',b), (a',b')
};

/// Evaluates the four setting pairs in the requested mode and applies the test.
/// Monte Carlo runs use seed derive_seed(config.seed, k + 1) for pair k.
BellReport evaluate_bell(const ExperimentConfig& config, const BellOptions& options);

void cmd_belltest(const ExperimentConfig& config, const BellOptions& options, std::ostream& out);

struct CompareOptions {
  std::vector<std::string> models{"qt", "blr"};
  std::size_t points = 37;
  double lambda0 = 0.0;  ///< crif only
  std::filesystem::path out;
};

/// Analytic curves against delta = a - b with b = 0, delta over [0, pi].
std::string compare_csv(const CompareOptions& options);

void cmd_compare(const CompareOptions& options, std::ostream& out);

/// `side,channel,time_s` lines sorted by time.
std::string events_text(const EventStreams& events);

void cmd_export_events(const ExperimentConfig& config, const std::filesystem::path& out_path,
                       std::ostream& out);

/// Parses argv and runs a subcommand; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lrsim::cli
