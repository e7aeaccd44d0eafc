#include "qftv/abstraction.hpp"

namespace qftv {

std::string to_string(const ConcreteBits& bits) {
  std::string s = "<.";
  for (auto b : bits) s += b ? '1' : '0';
  return s + ">";
}

std::string to_string(const ExprStore& store, const SymbolicBitVector& v) {
  std::string s = "<.";
  for (int p = 1; p <= v.width(); ++p) {
    if (p > 1) s += ' ';
    s += store.to_string(v.bit(p));
  }
  return s + ">";
}

std::uint64_t fraction_numerator(const ConcreteBits& bits) {
  if (bits.size() > 64) throw Error("fraction wider than 64 bits");
  std::uint64_t n = 0;
  for (auto b : bits) n = (n << 1) | b;
  return n;
}

SymbolicBitVector abstract_h(ExprStore& /*store*/, ExprId qc, int m) {
  if (m < 1) throw Error("bit-vector width must be >= 1");
  SymbolicBitVector out = SymbolicBitVector::zeros(m);
  out.bit(1) = qc;
  return out;
}

SymbolicBitVector abstract_rn(ExprStore& store, ExprId qc, const SymbolicBitVector& qd, int n) {
  if (n < 1 || n > qd.width()) {
    throw Error("R" + std::to_string(n) + " is not representable in " + std::to_string(qd.width()) +
                " fractional bits");
  }
  SymbolicBitVector addend = SymbolicBitVector::zeros(qd.width());
  addend.bit(n) = store.mk_and(store.constant(true), qc);
  return symbolic_add_mod(store, qd, addend);
}

SymbolicBitVector symbolic_add_mod(ExprStore& store, const SymbolicBitVector& a,
                                   const SymbolicBitVector& b) {
  if (a.width() != b.width()) {
    throw Error("width mismatch: " + std::to_string(a.width()) + " vs " + std::to_string(b.width()));
  }
  SymbolicBitVector sum = SymbolicBitVector::zeros(a.width());
  ExprId carry = ExprStore::kFalse;
  for (int p = a.width(); p >= 1; --p) {
    const ExprId half = store.mk_xor(a.bit(p), b.bit(p));
    sum.bit(p) = store.mk_xor(half, carry);
    carry = store.mk_xor(store.mk_and(a.bit(p), b.bit(p)), store.mk_and(carry, half));
  }
  return sum;
}

void add_rotation(ExprStore& store, SymbolicBitVector& qd, ExprId qc, int n) {
  if (n < 1 || n > qd.width()) {
    throw Error("R" + std::to_string(n) + " is not representable in " + std::to_string(qd.width()) +
                " fractional bits");
  }
  ExprId carry = qc;
  for (int p = n; p >= 1 && carry != ExprStore::kFalse; --p) {
    const ExprId a = qd.bit(p);
    qd.bit(p) = store.mk_xor(a, carry);
    carry = store.mk_and(a, carry);
  }
}

ConcreteBits eval_bits(const ExprStore& store, const SymbolicBitVector& v, const Assignment& a) {
  return store.eval_all(v.bits, a);
}

// ---------------------------------------------------------------------------

const char* to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::HOnDataWire: return "HOnDataWire";
    case TypeErrorKind::RnDataPortGotControl: return "RnDataPortGotControl";
    case TypeErrorKind::RnControlPortGotData: return "RnControlPortGotData";
    case TypeErrorKind::DuplicateH: return "DuplicateH";
  }
  return "?";
}

std::string TypeError::message() const {
  std::string where = " at gate " + std::to_string(gate_ordinal) + " (line " + std::to_string(line) + ")";
  switch (kind) {
    case TypeErrorKind::HOnDataWire: return "H gate received a data wire" + where;
    case TypeErrorKind::RnDataPortGotControl: return "rotation data port received a control wire" + where;
    case TypeErrorKind::RnControlPortGotData: return "rotation control port received a data wire" + where;
    case TypeErrorKind::DuplicateH: return "second H gate on a line" + where;
  }
  return "type error" + where;
}

std::variant<Typing, TypeError> typecheck(const Circuit& c) {
  const auto lines = static_cast<std::size_t>(c.qubits()) + 1;
  Typing typing;
  typing.became_data.assign(lines, std::nullopt);
  std::vector<std::uint8_t> had_h(lines, 0);
  auto is_data = [&](Line l) { return typing.became_data[static_cast<std::size_t>(l)].has_value(); };

  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gate(k);
    const std::size_t ord = k + 1;
    const auto t = static_cast<std::size_t>(g.target);
    if (g.is_h()) {
      if (had_h[t]) return TypeError{TypeErrorKind::DuplicateH, ord, g.target};
      if (is_data(g.target)) return TypeError{TypeErrorKind::HOnDataWire, ord, g.target};
      if (is_data(g.source())) return TypeError{TypeErrorKind::HOnDataWire, ord, g.source()};
      had_h[t] = 1;
      typing.became_data[t] = k;
      continue;
    }
    if (!is_data(g.source())) return TypeError{TypeErrorKind::RnDataPortGotControl, ord, g.source()};
    if (is_data(*g.control)) return TypeError{TypeErrorKind::RnControlPortGotData, ord, *g.control};
    if (!is_data(g.target)) typing.became_data[t] = k;
  }
  return typing;
}

// ---------------------------------------------------------------------------

Dataflow::Dataflow(const Circuit& c)
    : pred_(c.size(), -1), last_writer_(static_cast<std::size_t>(c.qubits()) + 1, -1) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gate(k);
    if (g.is_r()) pred_[k] = last_writer_[static_cast<std::size_t>(g.source())];
    last_writer_[static_cast<std::size_t>(g.target)] = static_cast<std::int64_t>(k);
  }
}

std::vector<std::size_t> Dataflow::chain(Line line) const {
  std::vector<std::size_t> out;
  for (std::int64_t k = last_writer_.at(static_cast<std::size_t>(line)); k >= 0;
       k = pred_[static_cast<std::size_t>(k)]) {
    out.push_back(static_cast<std::size_t>(k));
  }
  return {out.rbegin(), out.rend()};
}

LineOutput run_line(const Circuit& c, const Dataflow& flow, Line line) {
  LineOutput out;
  out.store = std::make_shared<ExprStore>();
  ExprStore& store = *out.store;
  out.value = SymbolicBitVector::zeros(c.qubits());
  for (std::size_t k : flow.chain(line)) {
    const Gate& g = c.gate(k);
    if (g.is_h()) {
      out.value = abstract_h(store, store.var(g.source()), c.qubits());
      out.wire = WireType::Data;
    } else {
      add_rotation(store, out.value, store.var(*g.control), g.order);
    }
  }
  return out;
}

std::variant<AbstractOutputs, TypeError> run_abstract(const Circuit& c) {
  auto typed = typecheck(c);
  if (auto* err = std::get_if<TypeError>(&typed)) return *err;
  const Dataflow flow(c);
  AbstractOutputs out;
  out.m = c.qubits();
  out.lines.reserve(static_cast<std::size_t>(c.qubits()));
  for (Line i = 1; i <= c.qubits(); ++i) out.lines.push_back(run_line(c, flow, i));
  return out;
}

}  // namespace qftv
