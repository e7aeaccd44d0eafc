// Benchmark sweep over QFT sizes and error scenarios, reported as CSV.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qftv/checker.hpp"

namespace qftv {

/// A benchmark scenario on qubit 1 (correct, wrong order, wrong control) or, for the
/// error-position study, the first rotation of an arbitrary qubit.
struct Scenario {
  enum class Kind : std::uint8_t { Correct, IncorrectGate, IncorrectControl };
  Kind kind = Kind::Correct;
  /// "2" or "n" for the qubit-1 depth variants, "q<K>" for error position K.
  std::string position;

  /// Accepts correct, gate-2, gate-n, control-2, control-n, gate-q<K>, and the
  /// CSV spellings incorrect-gate@2 etc.
  static Scenario parse(std::string_view text);
  std::string name() const;  // CSV spelling

  /// The mutation this scenario applies to qft(m); nullopt for Correct.
  std::optional<ErrorSpec> error_for(int m) const;
};

struct BenchRecord {
  int qubits = 0;
  std::size_t gates = 0;
  std::string scenario;
  Verdict verdict = Verdict::Verified;
  std::string backend;
  /// Worst per-qubit time for correct circuits, time of the first failing
  /// qubit otherwise; minimum over repeats.
  double time_s = 0.0;
  double mem_mb = 0.0;  // resident set size after verification
  Line failing_qubit = 0;
};

struct BenchConfig {
  std::vector<int> sizes;
  std::vector<Scenario> scenarios;
  CheckerConfig checker;
  int repeats = 3;
  double budget_s = 0.0;  // wall-clock cap for the whole sweep; 0 = none
  int max_qubits = 2048;  // sizes above this require an explicit opt-in
};

struct BenchResult {
  std::vector<BenchRecord> records;
  bool truncated = false;
};

BenchResult run_bench(const BenchConfig& cfg);

inline constexpr std::string_view kCsvHeader = "qubits,gates,scenario,verdict,backend,time_s,mem_mb";

std::string to_csv(const BenchResult& result);
/// Whitespace-separated columns for gnuplot, one block per scenario.
std::string to_plot_data(const BenchResult& result);

/// Resident set size of this process in MB, 0 if unavailable.
double resident_mb();

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qftv
