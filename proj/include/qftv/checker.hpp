// Per-qubit correctness check: line i of a QFT on m qubits must end in
// <.b_i b_{i+1} ... b_m 0 ... 0>.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qftv/abstraction.hpp"
#include "qftv/anf.hpp"
#include "qftv/smt.hpp"

namespace qftv {

SymbolicBitVector target_vector(ExprStore& store, Line i, int m);

/// Assignment under which `diff` evaluates to 1. Uses all-false when the
/// constant monomial is present, otherwise sets exactly the variables of an
/// inclusion-minimal monomial. Throws std::logic_error on the zero polynomial.
Assignment find_counterexample(const AnfPoly& diff, int m);

enum class Backend : std::uint8_t { Anf, Smt, Auto };
enum class BackendUsed : std::uint8_t { StructuralAnf, Smt, None };
enum class QubitStatus : std::uint8_t { Verified, Violation, Inconclusive };
enum class Verdict : std::uint8_t { Verified, Violation, TypeError, Inconclusive };

const char* to_string(Backend b);
const char* to_string(BackendUsed b);
const char* to_string(QubitStatus s);
const char* to_string(Verdict v);
Backend parse_backend(std::string_view text);

struct Counterexample {
  Assignment assignment;
  ConcreteBits expected;
  ConcreteBits actual;
  std::vector<int> defaulted;  // variables the solver left unassigned
};

struct QubitVerdict {
  Line qubit = 0;
  QubitStatus status = QubitStatus::Verified;
  std::optional<Counterexample> counterexample;
  BackendUsed backend = BackendUsed::StructuralAnf;
  double millis = 0.0;
  std::string note;
};

struct CheckerConfig {
  Backend backend = Backend::Auto;
  /// Check every qubit instead of stopping at the first non-verified one.
  bool exhaustive = false;
  std::size_t anf_budget = kDefaultAnfBudget;
  std::optional<SolverConfig> solver;
  unsigned threads = 1;
  /// Where obligation files go when the SMT backend runs; empty = temp dir.
  std::string work_dir;
};

struct VerificationReport {
  int qubits = 0;
  std::size_t gates = 0;
  Verdict verdict = Verdict::Verified;
  std::optional<TypeError> type_error;
  std::vector<QubitVerdict> qubits_checked;  // ascending qubit index
  double total_millis = 0.0;

  /// Lowest-index non-verified qubit, if any.
  const QubitVerdict* first_failure() const;
  double worst_qubit_millis() const;
  std::string to_json() const;
};

/// Checks line i of `outputs`. `c` is only consulted when the SMT backend is
/// needed (explicitly or as fallback on ANF overflow).
QubitVerdict check_qubit(const Circuit& c, const AbstractOutputs& outputs, Line i,
                         const CheckerConfig& cfg);

/// Typecheck, then per-qubit abstract execution and check. The per-qubit time
/// covers executing that qubit's own gate chain plus deciding its property.
VerificationReport verify_circuit(const Circuit& c, const CheckerConfig& cfg = {});

}  // namespace qftv
