#include "qftv/circuit.hpp"

#include <charconv>
#include <sstream>

namespace qftv {

namespace {

std::string ordinal_prefix(std::size_t ordinal) {
  return "gate " + std::to_string(ordinal) + ": ";
}

void check_line(int m, Line line, std::string_view what, std::size_t ordinal) {
  if (line < 1 || line > m) {
    throw CircuitError(ordinal_prefix(ordinal) + std::string(what) + " " + std::to_string(line) +
                           " out of range 1.." + std::to_string(m),
                       ordinal);
  }
}

}  // namespace

std::string to_string(const Gate& g) {
  std::ostringstream os;
  if (g.is_h()) {
    os << "H(" << g.target;
  } else {
    os << "R" << g.order << "(" << g.target << ", ctl " << g.control.value_or(0);
  }
  if (g.input) os << ", in " << *g.input;
  os << ")";
  return os.str();
}

Circuit::Circuit(int qubits, std::vector<Gate> gates) : qubits_(qubits), gates_(std::move(gates)) {
  if (qubits_ < 1) throw CircuitError("m must be >= 1 (got " + std::to_string(qubits_) + ")");
  for (std::size_t k = 0; k < gates_.size(); ++k) {
    Gate& g = gates_[k];
    const std::size_t ord = k + 1;
    check_line(qubits_, g.target, "target", ord);
    if (g.input) {
      check_line(qubits_, *g.input, "input", ord);
      if (*g.input == g.target) g.input.reset();
    }
    if (g.is_h()) {
      if (g.control) throw CircuitError(ordinal_prefix(ord) + "H gate must not have a control", ord);
      if (g.order != 0) throw CircuitError(ordinal_prefix(ord) + "H gate must not have an order", ord);
      continue;
    }
    if (!g.control) throw CircuitError(ordinal_prefix(ord) + "R gate requires a control", ord);
    check_line(qubits_, *g.control, "control", ord);
    if (*g.control == g.target) throw CircuitError(ordinal_prefix(ord) + "control equals target", ord);
    if (g.order < 1 || g.order > qubits_) {
      throw CircuitError(ordinal_prefix(ord) + "rotation order " + std::to_string(g.order) +
                             " outside 1.." + std::to_string(qubits_),
                         ord);
    }
  }
}

std::vector<std::size_t> Circuit::gates_on(Line line) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < gates_.size(); ++k) {
    if (gates_[k].target == line) out.push_back(k);
  }
  return out;
}

Circuit generate_qft(int m) {
  if (m < 1) throw CircuitError("m must be >= 1 (got " + std::to_string(m) + ")");
  std::vector<Gate> gates;
  gates.reserve(qft_gate_count(static_cast<std::uint64_t>(m)));
  for (Line i = 1; i <= m; ++i) {
    gates.push_back(Gate::h(i));
    for (Line ctl = i + 1; ctl <= m; ++ctl) gates.push_back(Gate::r(ctl - i + 1, i, ctl));
  }
  return Circuit(m, std::move(gates));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t find_rotation(const Circuit& c, Line target, int ordinal) {
  if (target < 1 || target > c.qubits()) {
    throw CircuitError("target line " + std::to_string(target) + " out of range");
  }
  int seen = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gate(k);
    if (g.target == target && g.is_r() && ++seen == ordinal) return k;
  }
  throw CircuitError("line " + std::to_string(target) + " has no rotation gate with ordinal " +
                     std::to_string(ordinal));
}

std::size_t find_hadamard(const Circuit& c, Line target) {
  if (target < 1 || target > c.qubits()) {
    throw CircuitError("target line " + std::to_string(target) + " out of range");
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gate(k);
    if (g.target == target && g.is_h()) return k;
  }
  throw CircuitError("line " + std::to_string(target) + " has no H gate");
}

void require_line(const Circuit& c, Line line, std::string_view what) {
  if (line < 1 || line > c.qubits()) {
    throw CircuitError(std::string(what) + " " + std::to_string(line) + " out of range 1.." +
                       std::to_string(c.qubits()));
  }
}

[[noreturn]] void reject_noop(std::string_view what) {
  throw CircuitError("mutation is a no-op: " + std::string(what) + " equals the current value");
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

Circuit inject_error(const Circuit& c, const ErrorSpec& e) {
  std::vector<Gate> gates(c.gates().begin(), c.gates().end());
  std::visit(
      Overloaded{
          [&](const IncorrectGateOrder& x) {
            Gate& g = gates[find_rotation(c, x.target, x.ordinal)];
            if (x.wrong_order < 1 || x.wrong_order > c.qubits()) {
              throw CircuitError("wrong order " + std::to_string(x.wrong_order) + " outside 1.." +
                                 std::to_string(c.qubits()));
            }
            if (g.order == x.wrong_order) reject_noop("rotation order");
            g.order = x.wrong_order;
          },
          [&](const IncorrectControl& x) {
            Gate& g = gates[find_rotation(c, x.target, x.ordinal)];
            require_line(c, x.wrong_control, "wrong control");
            if (x.wrong_control == g.target) throw CircuitError("wrong control equals target");
            if (g.control == x.wrong_control) reject_noop("control");
            g.control = x.wrong_control;
          },
          [&](const MissingH& x) {
            gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(find_hadamard(c, x.target)));
          },
          [&](const DuplicateH& x) {
            const std::size_t k = find_hadamard(c, x.target);
            gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(k) + 1, gates[k]);
          },
          [&](const WrongHInput& x) {
            Gate& g = gates[find_hadamard(c, x.target)];
            require_line(c, x.wrong_source, "wrong source");
            if (g.source() == x.wrong_source) reject_noop("H input");
            g.input = x.wrong_source;
          },
          [&](const WrongRnDataInput& x) {
            Gate& g = gates[find_rotation(c, x.target, x.ordinal)];
            require_line(c, x.wrong_source, "wrong source");
            if (g.source() == x.wrong_source) reject_noop("R data input");
            g.input = x.wrong_source;
          },
      },
      e);
  return Circuit(c.qubits(), std::move(gates));
}

Circuit split_rotation(const Circuit& c, Line target, int ordinal) {
  const std::size_t k = find_rotation(c, target, ordinal);
  std::vector<Gate> gates(c.gates().begin(), c.gates().end());
  Gate finer = gates[k];
  if (finer.order + 1 > c.qubits()) {
    throw CircuitError("cannot split R" + std::to_string(finer.order) + ": R" +
                       std::to_string(finer.order + 1) + " is finer than " +
                       std::to_string(c.qubits()) + " fractional bits");
  }
  finer.order += 1;
  gates[k] = finer;
  gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(k) + 1, finer);
  return Circuit(c.qubits(), std::move(gates));
}

std::vector<ErrorSpec> error_catalog(const Circuit& c) {
  const int m = c.qubits();
  std::vector<ErrorSpec> out;
  for (Line t = 1; t <= m; ++t) {
    int ordinal = 0;
    bool has_h = false;
    for (const Gate& g : c.gates()) {
      if (g.target != t) continue;
      if (g.is_h()) {
        if (has_h) continue;
        has_h = true;
        out.push_back(MissingH{t});
        out.push_back(DuplicateH{t});
        for (Line s = 1; s <= m; ++s) {
          if (s != g.source()) out.push_back(WrongHInput{t, s});
        }
        continue;
      }
      ++ordinal;
      for (int n = 1; n <= m; ++n) {
        if (n != g.order) out.push_back(IncorrectGateOrder{t, ordinal, n});
      }
      for (Line ctl = 1; ctl <= m; ++ctl) {
        if (ctl != t && ctl != *g.control) out.push_back(IncorrectControl{t, ordinal, ctl});
      }
      for (Line s = 1; s <= m; ++s) {
        if (s != g.source()) out.push_back(WrongRnDataInput{t, ordinal, s});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(const ErrorSpec& e) {
  auto join = [](std::string_view tag, std::initializer_list<int> xs) {
    std::string s(tag);
    for (int x : xs) s += ":" + std::to_string(x);
    return s;
  };
  return std::visit(
      Overloaded{
          [&](const IncorrectGateOrder& x) { return join("gate", {x.target, x.ordinal, x.wrong_order}); },
          [&](const IncorrectControl& x) {
            return join("control", {x.target, x.ordinal, x.wrong_control});
          },
          [&](const MissingH& x) { return join("missing-h", {x.target}); },
          [&](const DuplicateH& x) { return join("duplicate-h", {x.target}); },
          [&](const WrongHInput& x) { return join("h-input", {x.target, x.wrong_source}); },
          [&](const WrongRnDataInput& x) {
            return join("rn-input", {x.target, x.ordinal, x.wrong_source});
          },
      },
      e);
}

ErrorSpec parse_error_spec(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view tag = parts.front();
  std::vector<int> args;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(parts[k].data(), parts[k].data() + parts[k].size(), v);
    if (ec != std::errc{} || ptr != parts[k].data() + parts[k].size()) {
      throw Error("bad number '" + std::string(parts[k]) + "' in error spec '" + std::string(text) + "'");
    }
    args.push_back(v);
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw Error("error spec '" + std::string(text) + "' expects " + std::to_string(n) + " numbers");
    }
  };
  if (tag == "gate") return need(3), ErrorSpec{IncorrectGateOrder{args[0], args[1], args[2]}};
  if (tag == "control") return need(3), ErrorSpec{IncorrectControl{args[0], args[1], args[2]}};
  if (tag == "missing-h") return need(1), ErrorSpec{MissingH{args[0]}};
  if (tag == "duplicate-h") return need(1), ErrorSpec{DuplicateH{args[0]}};
  if (tag == "h-input") return need(2), ErrorSpec{WrongHInput{args[0], args[1]}};
  if (tag == "rn-input") return need(3), ErrorSpec{WrongRnDataInput{args[0], args[1], args[2]}};
  throw Error("unknown error kind '" + std::string(tag) +
              "' (expected gate, control, missing-h, duplicate-h, h-input, rn-input)");
}

}  // namespace qftv
