// Circuit IR for QFT-style circuits built from Hadamard and controlled
// rotation gates, together with the canonical generator and the fault
// injector used to build erroneous benchmark circuits.
//
// All qubit lines and ordinals are 1-based: line 1 is the most significant
// input b1 and carries the finest rotation sequence.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qftv {

using Line = int;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural violation of the circuit invariants. `gate_ordinal` is the
/// 1-based position in program order, or 0 when the circuit header is at fault.
class CircuitError : public Error {
 public:
  CircuitError(const std::string& what, std::size_t gate_ordinal = 0)
      : Error(what), gate_ordinal_(gate_ordinal) {}
  std::size_t gate_ordinal() const noexcept { return gate_ordinal_; }

 private:
  std::size_t gate_ordinal_;
};

enum class GateKind : std::uint8_t { H, R };

/// One gate application.
///
/// `control` always names an initial (pre-Hadamard) qubit line. `input` names
/// the line whose wire feeds the gate when it differs from `target`; it only
/// appears in mutated circuits (wrong Hadamard input, wrong rotation data
/// input) and is normalized away when equal to `target`.
struct Gate {
  GateKind kind = GateKind::H;
  int order = 0;  // n of R_n; 0 for H
  Line target = 1;
  std::optional<Line> control;
  std::optional<Line> input;

  static Gate h(Line target) { return Gate{GateKind::H, 0, target, std::nullopt, std::nullopt}; }
  static Gate r(int n, Line target, Line control) {
    return Gate{GateKind::R, n, target, control, std::nullopt};
  }

  Line source() const { return input.value_or(target); }
  bool is_h() const { return kind == GateKind::H; }
  bool is_r() const { return kind == GateKind::R; }

  bool operator==(const Gate&) const = default;
};

std::string to_string(const Gate& g);

class Circuit {
 public:
  /// Validates every invariant and throws CircuitError on the first violation.
  Circuit(int qubits, std::vector<Gate> gates);

  int qubits() const noexcept { return qubits_; }
  std::span<const Gate> gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  const Gate& gate(std::size_t index) const { return gates_.at(index); }

  /// Program-order indices (0-based) of all gates targeting `line`.
  std::vector<std::size_t> gates_on(Line line) const;

  bool operator==(const Circuit&) const = default;

 private:
  int qubits_;
  std::vector<Gate> gates_;
};

/// m(m+1)/2, the gate count of the swap-free QFT on m qubits.
constexpr std::uint64_t qft_gate_count(std::uint64_t m) { return m * (m + 1) / 2; }

/// Canonical QFT: for each line i ascending, H(i) followed by R_2..R_{m-i+1}
/// on line i controlled by lines i+1..m. No terminal swaps.
Circuit generate_qft(int m);

// ---------------------------------------------------------------------------
// Fault injection. `ordinal` counts rotation gates on the target line in
// program order, starting at 1.

struct IncorrectGateOrder {
  Line target;
  int ordinal;
  int wrong_order;
  bool operator==(const IncorrectGateOrder&) const = default;
};
struct IncorrectControl {
  Line target;
  int ordinal;
  Line wrong_control;
  bool operator==(const IncorrectControl&) const = default;
};
struct MissingH {
  Line target;
  bool operator==(const MissingH&) const = default;
};
struct DuplicateH {
  Line target;
  bool operator==(const DuplicateH&) const = default;
};
struct WrongHInput {
  Line target;
  Line wrong_source;
  bool operator==(const WrongHInput&) const = default;
};
struct WrongRnDataInput {
  Line target;
  int ordinal;
  Line wrong_source;
  bool operator==(const WrongRnDataInput&) const = default;
};

using ErrorSpec = std::variant<IncorrectGateOrder, IncorrectControl, MissingH, DuplicateH,
                               WrongHInput, WrongRnDataInput>;

/// Applies exactly one mutation; `c` is left untouched. Rejects out-of-range
/// references and mutations that would not change the circuit.
Circuit inject_error(const Circuit& c, const ErrorSpec& e);

/// Replaces the `ordinal`-th rotation R_n on `target` by two R_{n+1} with the
/// same control. The result has the same total rotation per control.
Circuit split_rotation(const Circuit& c, Line target, int ordinal);

/// Every single mutation of `c` that inject_error accepts.
std::vector<ErrorSpec> error_catalog(const Circuit& c);

/// Compact textual form used by the CLI, e.g. "gate:1:1:3", "missing-h:2".
std::string to_string(const ErrorSpec& e);
ErrorSpec parse_error_spec(std::string_view text);

// ---------------------------------------------------------------------------
// JSON circuit files.

/// Malformed circuit text. `line`/`column` locate JSON syntax errors; for
/// schema errors `gate_ordinal` names the offending gate (1-based, 0 if none).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, std::size_t gate_ordinal)
      : Error(what), line_(line), column_(column), gate_ordinal_(gate_ordinal) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t gate_ordinal() const noexcept { return gate_ordinal_; }

 private:
  std::size_t line_, column_, gate_ordinal_;
};

Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);

}  // namespace qftv
