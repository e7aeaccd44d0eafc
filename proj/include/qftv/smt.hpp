// SMT-LIB2 (QF_BV) obligations for the per-qubit property and a small driver
// for external solvers. Solvers are only ever spawned as processes.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qftv/circuit.hpp"
#include "qftv/expr.hpp"

namespace qftv {

/// Text for qubit `i`: declarations b1..bm : Bool, the line's value built gate
/// by gate with ite on controls and bvadd, then (assert (not (= actual target))),
/// (check-sat), (get-model). unsat means the qubit is correct. Throws Error if
/// `c` does not typecheck.
std::string emit_smt2(const Circuit& c, Line i);

struct SolverConfig {
  /// argv; "{file}" is replaced by the obligation path, otherwise the path is
  /// appended.
  std::vector<std::string> command{"z3"};
  double timeout_s = 60.0;

  /// QFTV_SOLVER when set, else `z3` if it is on PATH.
  static std::optional<SolverConfig> detect();
  static SolverConfig from_string(std::string_view command_line);
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

struct Model {
  Assignment assignment;
  std::vector<int> defaulted;
};

/// Reads (define-fun bK () Bool true|false) entries. Variables the model does
/// not mention default to false and are listed in `defaulted`.
Model parse_model(std::string_view solver_output, int m);

struct SolverResult {
  enum class Kind : std::uint8_t { Unsat, Sat, Unknown, Failure };
  Kind kind = Kind::Failure;
  Model model;  // Sat only
  std::string detail;
  double wall_s = 0.0;
  double peak_mb = 0.0;  // child max RSS, 0 when unavailable
};

const char* to_string(SolverResult::Kind k);

SolverResult invoke_solver(const SolverConfig& cfg, const std::filesystem::path& file, int m);

}  // namespace qftv
