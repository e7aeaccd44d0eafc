#include <json.hpp>

#include "qftv/circuit.hpp"

namespace qftv {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& what, std::size_t ordinal = 0) {
  throw ParseError(ordinal ? "gate " + std::to_string(ordinal) + ": " + what : what, 0, 0, ordinal);
}

int integer_field(const json& obj, const char* key, std::size_t ordinal) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(std::string("missing \"") + key + "\"", ordinal);
  if (!it->is_number_integer()) schema_error(std::string("\"") + key + "\" must be an integer", ordinal);
  const auto v = it->get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    schema_error(std::string("\"") + key + "\" out of range", ordinal);
  }
  return static_cast<int>(v);
}

Gate parse_gate(const json& g, std::size_t ordinal) {
  if (!g.is_object()) schema_error("gate entry must be an object", ordinal);
  const auto kind = g.find("kind");
  if (kind == g.end() || !kind->is_string()) schema_error("missing string \"kind\"", ordinal);
  for (const auto& [key, _] : g.items()) {
    if (key != "kind" && key != "n" && key != "target" && key != "control" && key != "input") {
      schema_error("unknown key \"" + key + "\"", ordinal);
    }
  }
  Gate gate;
  gate.target = integer_field(g, "target", ordinal);
  if (g.contains("input")) gate.input = integer_field(g, "input", ordinal);
  const auto& k = kind->get_ref<const std::string&>();
  if (k == "H") {
    if (g.contains("control")) schema_error("H gate must not have a control", ordinal);
    if (g.contains("n")) schema_error("H gate must not have an order", ordinal);
    gate.kind = GateKind::H;
  } else if (k == "R") {
    if (!g.contains("control")) schema_error("R gate requires a control", ordinal);
    gate.kind = GateKind::R;
    gate.order = integer_field(g, "n", ordinal);
    gate.control = integer_field(g, "control", ordinal);
  } else {
    schema_error("unknown gate kind \"" + k + "\"", ordinal);
  }
  return gate;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_and_column(text, offset);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column, 0);
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  const int m = integer_field(doc, "qubits", 0);
  if (m < 1) schema_error("m must be >= 1 (got " + std::to_string(m) + ")");
  const auto gates_it = doc.find("gates");
  if (gates_it == doc.end() || !gates_it->is_array()) schema_error("missing array \"gates\"");

  std::vector<Gate> gates;
  gates.reserve(gates_it->size());
  std::size_t ordinal = 0;
  for (const auto& g : *gates_it) gates.push_back(parse_gate(g, ++ordinal));
  try {
    return Circuit(m, std::move(gates));
  } catch (const CircuitError& e) {
    throw ParseError(e.what(), 0, 0, e.gate_ordinal());
  }
}

std::string serialize_circuit(const Circuit& c) {
  std::string out;
  out.reserve(64 + c.size() * 48);
  out += "{\n  \"qubits\": " + std::to_string(c.qubits()) + ",\n  \"gates\": [";
  bool first = true;
  for (const Gate& g : c.gates()) {
    out += first ? "\n    " : ",\n    ";
    first = false;
    if (g.is_h()) {
      out += "{\"kind\": \"H\", \"target\": " + std::to_string(g.target);
    } else {
      out += "{\"kind\": \"R\", \"n\": " + std::to_string(g.order) +
             ", \"target\": " + std::to_string(g.target) +
             ", \"control\": " + std::to_string(*g.control);
    }
    if (g.input) out += ", \"input\": " + std::to_string(*g.input);
    out += "}";
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace qftv
