#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qftv/circuit.hpp"

using namespace qftv;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(QFTV_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Positions (in the longer list) where two gate lists differ, assuming the
/// lists have equal length.
std::vector<std::size_t> differing_positions(const Circuit& a, const Circuit& b) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a.gate(k) == b.gate(k))) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST(GenerateQft, ThreeQubitsMatchesTextbookCircuit) {
  const Circuit c = generate_qft(3);
  const std::vector<Gate> expected{Gate::h(1), Gate::r(2, 1, 2), Gate::r(3, 1, 3),
                                   Gate::h(2), Gate::r(2, 2, 3), Gate::h(3)};
  ASSERT_EQ(c.qubits(), 3);
  EXPECT_EQ(std::vector<Gate>(c.gates().begin(), c.gates().end()), expected);
}

TEST(GenerateQft, SixteenQubitsHas136Gates) { EXPECT_EQ(generate_qft(16).size(), 136U); }

TEST(GenerateQft, SingleQubitIsOneHadamard) {
  const Circuit c = generate_qft(1);
  ASSERT_EQ(c.size(), 1U);
  EXPECT_EQ(c.gate(0), Gate::h(1));
}

TEST(GenerateQft, GateCountFormulaHoldsUpTo256) {
  for (int m = 1; m <= 256; ++m) {
    ASSERT_EQ(generate_qft(m).size(), qft_gate_count(static_cast<std::uint64_t>(m))) << "m=" << m;
  }
}

TEST(GenerateQft, RejectsZeroQubits) { EXPECT_THROW(generate_qft(0), CircuitError); }

TEST(GenerateQft, PerLineStructure) {
  const int m = 7;
  const Circuit c = generate_qft(m);
  for (Line i = 1; i <= m; ++i) {
    const auto on = c.gates_on(i);
    ASSERT_EQ(on.size(), static_cast<std::size_t>(m - i + 1));
    EXPECT_TRUE(c.gate(on[0]).is_h());
    for (std::size_t k = 1; k < on.size(); ++k) {
      const Gate& g = c.gate(on[k]);
      EXPECT_EQ(g.order, static_cast<int>(k) + 1);
      EXPECT_EQ(*g.control, i + static_cast<int>(k));
    }
  }
}

// ---------------------------------------------------------------------------

TEST(Circuit, ValidatesInvariants) {
  EXPECT_THROW(Circuit(2, {Gate::r(2, 1, 1)}), CircuitError);
  EXPECT_THROW(Circuit(2, {Gate::r(3, 1, 2)}), CircuitError);
  EXPECT_THROW(Circuit(2, {Gate::r(0, 1, 2)}), CircuitError);
  EXPECT_THROW(Circuit(2, {Gate::h(3)}), CircuitError);
  Gate h_with_control = Gate::h(1);
  h_with_control.control = 2;
  EXPECT_THROW(Circuit(2, {h_with_control}), CircuitError);
  Gate r_without_control = Gate::r(2, 1, 2);
  r_without_control.control.reset();
  EXPECT_THROW(Circuit(2, {r_without_control}), CircuitError);
  // R1 is representable and therefore allowed.
  EXPECT_NO_THROW(Circuit(2, {Gate::h(1), Gate::r(1, 1, 2)}));
}

TEST(Circuit, ErrorCarriesGateOrdinal) {
  try {
    Circuit(3, {Gate::h(1), Gate::h(2), Gate::r(2, 3, 3)});
    FAIL();
  } catch (const CircuitError& e) {
    EXPECT_EQ(e.gate_ordinal(), 3U);
    EXPECT_NE(std::string(e.what()).find("control equals target"), std::string::npos);
  }
}

TEST(Circuit, InputEqualToTargetIsNormalized) {
  Gate g = Gate::h(2);
  g.input = 2;
  const Circuit c(2, {g});
  EXPECT_FALSE(c.gate(0).input.has_value());
}

// ---------------------------------------------------------------------------

TEST(InjectError, GateOrderReplacesR2WithR3) {
  const Circuit base = generate_qft(3);
  const Circuit c = inject_error(base, IncorrectGateOrder{1, 1, 3});
  EXPECT_EQ(c.gate(1), Gate::r(3, 1, 2));
  EXPECT_EQ(differing_positions(base, c), std::vector<std::size_t>{1});
  EXPECT_EQ(base, generate_qft(3));  // input untouched
}

TEST(InjectError, MissingHRemovesLineTwoHadamard) {
  const Circuit c = inject_error(generate_qft(3), MissingH{2});
  const std::vector<Gate> expected{Gate::h(1), Gate::r(2, 1, 2), Gate::r(3, 1, 3), Gate::r(2, 2, 3), Gate::h(3)};
  EXPECT_EQ(std::vector<Gate>(c.gates().begin(), c.gates().end()), expected);
}

TEST(InjectError, IncorrectControlFeedsB2IntoR3) {
  const Circuit c = inject_error(generate_qft(3), IncorrectControl{1, 2, 2});
  EXPECT_EQ(c.gate(2), Gate::r(3, 1, 2));
}

TEST(InjectError, DuplicateHInsertsRightAfterOriginal) {
  const Circuit c = inject_error(generate_qft(3), DuplicateH{2});
  ASSERT_EQ(c.size(), 7U);
  EXPECT_EQ(c.gate(3), Gate::h(2));
  EXPECT_EQ(c.gate(4), Gate::h(2));
}

TEST(InjectError, RewiredInputs) {
  const Circuit h = inject_error(generate_qft(3), WrongHInput{1, 3});
  EXPECT_EQ(h.gate(0).source(), 3);
  const Circuit r = inject_error(generate_qft(3), WrongRnDataInput{2, 1, 1});
  EXPECT_EQ(r.gate(4).source(), 1);
  EXPECT_EQ(r.gate(4).target, 2);
}

TEST(InjectError, RejectsOutOfRangeAndNoOps) {
  const Circuit c = generate_qft(3);
  EXPECT_THROW(inject_error(c, IncorrectGateOrder{1, 3, 2}), CircuitError);   // only two rotations
  EXPECT_THROW(inject_error(c, IncorrectGateOrder{4, 1, 2}), CircuitError);   // no line 4
  EXPECT_THROW(inject_error(c, IncorrectGateOrder{1, 1, 4}), CircuitError);   // R4 > m
  EXPECT_THROW(inject_error(c, IncorrectGateOrder{1, 1, 2}), CircuitError);   // no-op
  EXPECT_THROW(inject_error(c, IncorrectControl{1, 1, 2}), CircuitError);     // no-op
  EXPECT_THROW(inject_error(c, IncorrectControl{1, 1, 1}), CircuitError);     // equals target
  EXPECT_THROW(inject_error(c, WrongHInput{2, 2}), CircuitError);             // no-op
  EXPECT_THROW(inject_error(c, WrongRnDataInput{3, 1, 1}), CircuitError);     // line 3 has no R
  EXPECT_THROW(inject_error(inject_error(c, MissingH{2}), MissingH{2}), CircuitError);
}

TEST(InjectError, ComposesSequentially) {
  const Circuit c = inject_error(inject_error(generate_qft(4), IncorrectGateOrder{1, 1, 3}),
                                 IncorrectControl{2, 1, 4});
  EXPECT_EQ(c.gate(1), Gate::r(3, 1, 2));
  EXPECT_EQ(c.gate(5), Gate::r(2, 2, 4));
}

TEST(InjectError, CatalogMutationsTouchOnlyTheMutatedGate) {
  for (int m = 1; m <= 5; ++m) {
    const Circuit base = generate_qft(m);
    for (const ErrorSpec& e : error_catalog(base)) {
      const Circuit c = inject_error(base, e);
      if (std::holds_alternative<MissingH>(e)) {
        EXPECT_EQ(c.size() + 1, base.size());
      } else if (std::holds_alternative<DuplicateH>(e)) {
        EXPECT_EQ(c.size(), base.size() + 1);
      } else {
        ASSERT_EQ(c.size(), base.size());
        EXPECT_EQ(differing_positions(base, c).size(), 1U) << to_string(e);
      }
    }
  }
}

TEST(ErrorCatalog, CountsForThreeQubits) {
  // Per H line: missing, duplicate, (m-1) wrong inputs. Per rotation:
  // (m-1) wrong orders, (m-2) wrong controls, (m-1) wrong data inputs.
  const int m = 3, rotations = 3;
  const std::size_t expected = static_cast<std::size_t>(m * (2 + (m - 1)) + rotations * ((m - 1) + (m - 2) + (m - 1)));
  EXPECT_EQ(error_catalog(generate_qft(m)).size(), expected);
}

TEST(SplitRotation, ReplacesWithTwoFinerGates) {
  const Circuit c = split_rotation(generate_qft(3), 1, 1);
  ASSERT_EQ(c.size(), 7U);
  EXPECT_EQ(c.gate(1), Gate::r(3, 1, 2));
  EXPECT_EQ(c.gate(2), Gate::r(3, 1, 2));
  EXPECT_THROW(split_rotation(generate_qft(3), 1, 2), CircuitError);  // R3 -> R4 > m
}

TEST(ErrorSpecText, RoundTripsEveryCatalogEntry) {
  for (const ErrorSpec& e : error_catalog(generate_qft(4))) EXPECT_EQ(parse_error_spec(to_string(e)), e);
  EXPECT_THROW(parse_error_spec("gate:1:2"), Error);
  EXPECT_THROW(parse_error_spec("bogus:1"), Error);
  EXPECT_THROW(parse_error_spec("missing-h:x"), Error);
}

// ---------------------------------------------------------------------------

TEST(CircuitIo, ParsesGeneratorOutput) {
  const Circuit c = parse_circuit(serialize_circuit(generate_qft(3)));
  EXPECT_EQ(c.size(), 6U);
  EXPECT_EQ(c, generate_qft(3));
}

TEST(CircuitIo, SingleQubitSerialization) {
  EXPECT_EQ(serialize_circuit(generate_qft(1)),
            "{\n  \"qubits\": 1,\n  \"gates\": [\n    {\"kind\": \"H\", \"target\": 1}\n  ]\n}\n");
}

TEST(CircuitIo, GoldenThreeQubitFile) { EXPECT_EQ(serialize_circuit(generate_qft(3)), read_golden("qft3.json")); }

TEST(CircuitIo, DuplicateHPreservedInOrder) {
  const Circuit dup = inject_error(generate_qft(3), DuplicateH{2});
  const std::string text = serialize_circuit(dup);
  const auto first = text.find("{\"kind\": \"H\", \"target\": 2}");
  ASSERT_NE(first, std::string::npos);
  EXPECT_NE(text.find("{\"kind\": \"H\", \"target\": 2}", first + 1), std::string::npos);
  EXPECT_EQ(parse_circuit(text), dup);
}

TEST(CircuitIo, ControlEqualsTargetIsSemanticError) {
  try {
    parse_circuit(R"({"qubits": 2, "gates": [{"kind":"R","n":2,"target":1,"control":1}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.gate_ordinal(), 1U);
    EXPECT_NE(std::string(e.what()).find("control equals target"), std::string::npos);
  }
}

TEST(CircuitIo, ZeroQubitsRejected) {
  try {
    parse_circuit(R"({"qubits":0,"gates":[]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("m must be >= 1"), std::string::npos);
  }
}

TEST(CircuitIo, SyntaxErrorReportsLineAndColumn) {
  try {
    parse_circuit("{\n  \"qubits\": 2,\n  \"gates\": [ oops ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_EQ(e.column(), 14U);
  }
}

TEST(CircuitIo, SchemaErrors) {
  EXPECT_THROW(parse_circuit(R"([1,2])"), ParseError);
  EXPECT_THROW(parse_circuit(R"({"qubits":2})"), ParseError);
  EXPECT_THROW(parse_circuit(R"({"qubits":2,"gates":[{"kind":"X","target":1}]})"), ParseError);
  EXPECT_THROW(parse_circuit(R"({"qubits":2,"gates":[{"kind":"H","target":1,"control":2}]})"), ParseError);
  EXPECT_THROW(parse_circuit(R"({"qubits":2,"gates":[{"kind":"R","n":2,"target":1}]})"), ParseError);
  EXPECT_THROW(parse_circuit(R"({"qubits":2,"gates":[{"kind":"H","target":"1"}]})"), ParseError);
  EXPECT_THROW(parse_circuit(R"({"qubits":2,"gates":[{"kind":"H","target":1,"colour":3}]})"), ParseError);
  try {
    parse_circuit(R"({"qubits":2,"gates":[{"kind":"H","target":1},{"kind":"H","target":5}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.gate_ordinal(), 2U);
  }
}

TEST(CircuitIo, RoundTripPropertyOnRandomMutations) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 12)(rng);
    Circuit c = generate_qft(m);
    const int mutations = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < mutations; ++k) {
      const auto catalog = error_catalog(c);
      if (catalog.empty()) break;
      c = inject_error(c, catalog[std::uniform_int_distribution<std::size_t>(0, catalog.size() - 1)(rng)]);
    }
    const std::string text = serialize_circuit(c);
    ASSERT_EQ(parse_circuit(text), c);
    ASSERT_EQ(serialize_circuit(parse_circuit(text)), text);
  }
}
