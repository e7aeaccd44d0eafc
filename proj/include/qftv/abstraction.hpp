// Rotational abstraction of H / controlled-R_n circuits on basis inputs.
//
// A qubit line starts as a Control wire holding its Boolean input b_i. Its
// Hadamard turns it into a Data wire holding an m-bit fractional bit-vector
// <.x1 x2 ... xm>, the rotation applied to |1> in units of 2*pi, where x1 has
// weight 1/2. Each controlled R_n adds 2^-n modulo 1 when its control is set.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qftv/circuit.hpp"
#include "qftv/expr.hpp"

namespace qftv {

enum class WireType : std::uint8_t { Control, Data };

/// Width-m fractional bit-vector; bit p (1-based) has weight 2^-p.
struct SymbolicBitVector {
  std::vector<ExprId> bits;

  int width() const noexcept { return static_cast<int>(bits.size()); }
  ExprId bit(int p) const { return bits.at(static_cast<std::size_t>(p - 1)); }
  ExprId& bit(int p) { return bits.at(static_cast<std::size_t>(p - 1)); }

  static SymbolicBitVector zeros(int m) { return {std::vector<ExprId>(static_cast<std::size_t>(m), ExprStore::kFalse)}; }

  bool operator==(const SymbolicBitVector&) const = default;
};

/// Concrete bits, index 0 is the most significant fractional bit.
using ConcreteBits = std::vector<std::uint8_t>;

std::string to_string(const ConcreteBits& bits);  // "<.101>"
std::string to_string(const ExprStore& store, const SymbolicBitVector& v);

/// Fraction numerator over 2^width.
std::uint64_t fraction_numerator(const ConcreteBits& bits);

// ---------------------------------------------------------------------------
// Gate semantics.

/// Abstract H: <.qc 0 ... 0>.
SymbolicBitVector abstract_h(ExprStore& store, ExprId qc, int m);

/// Abstract R_n: qd +_m (onehot(n) & qc). Throws Error if n is outside 1..width.
SymbolicBitVector abstract_rn(ExprStore& store, ExprId qc, const SymbolicBitVector& qd, int n);

/// Ripple-carry addition modulo 1; the carry out of bit 1 is dropped.
SymbolicBitVector symbolic_add_mod(ExprStore& store, const SymbolicBitVector& a,
                                   const SymbolicBitVector& b);

/// In-place form of abstract_rn. Bits below n are untouched (their addend and
/// carry-in are 0) and propagation stops once the carry folds to constant 0.
void add_rotation(ExprStore& store, SymbolicBitVector& qd, ExprId qc, int n);

ConcreteBits eval_bits(const ExprStore& store, const SymbolicBitVector& v, const Assignment& a);

// ---------------------------------------------------------------------------
// Typing.

enum class TypeErrorKind : std::uint8_t { HOnDataWire, RnDataPortGotControl, RnControlPortGotData, DuplicateH };

const char* to_string(TypeErrorKind kind);

struct TypeError {
  TypeErrorKind kind;
  std::size_t gate_ordinal;  // 1-based program position
  Line line;                 // the offending wire
  std::string message() const;
  bool operator==(const TypeError&) const = default;
};

struct Typing {
  /// Per line (index 0 unused): program index of the gate that turned the
  /// line into Data, or nullopt if it stays Control.
  std::vector<std::optional<std::size_t>> became_data;
  WireType final_type(Line line) const {
    return became_data.at(static_cast<std::size_t>(line)) ? WireType::Data : WireType::Control;
  }
};

/// Succeeds iff every Hadamard reads a Control wire and targets a line that
/// has not had one yet, every rotation reads its data from a Data wire, and
/// every control line is still Control at the time it is read.
std::variant<Typing, TypeError> typecheck(const Circuit& c);

// ---------------------------------------------------------------------------
// Abstract execution.

/// Data dependencies of a type-correct circuit. Each gate has at most one data
/// predecessor, so the gates feeding a line's final value form a chain.
class Dataflow {
 public:
  explicit Dataflow(const Circuit& c);

  /// Program indices of the chain ending in `line`'s final value, in
  /// application order. Empty if nothing ever wrote the line.
  std::vector<std::size_t> chain(Line line) const;

 private:
  std::vector<std::int64_t> pred_;         // per gate; -1 for none
  std::vector<std::int64_t> last_writer_;  // per line; -1 for none
};

struct LineOutput {
  std::shared_ptr<ExprStore> store;
  SymbolicBitVector value;  // all-zero while the line is still Control
  WireType wire = WireType::Control;
};

/// Final abstract state of every line. Each line owns its expression store.
struct AbstractOutputs {
  int m = 0;
  std::vector<LineOutput> lines;  // index 0 is line 1

  const LineOutput& operator[](Line i) const { return lines.at(static_cast<std::size_t>(i - 1)); }
};

/// Executes the chain of a single line in a fresh store. Assumes `c` passed
/// typecheck.
LineOutput run_line(const Circuit& c, const Dataflow& flow, Line line);

std::variant<AbstractOutputs, TypeError> run_abstract(const Circuit& c);

}  // namespace qftv
