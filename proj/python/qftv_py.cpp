#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qftv/checker.hpp"
#include "qftv/circuit.hpp"
#include "qftv/oracle.hpp"
#include "qftv/smt.hpp"

namespace py = pybind11;

namespace {

py::dict gate_dict(const qftv::Gate& g) {
  py::dict d;
  d["kind"] = g.is_h() ? "H" : "R";
  if (g.is_r()) d["n"] = g.order;
  d["target"] = g.target;
  if (g.control) d["control"] = *g.control;
  if (g.input) d["input"] = *g.input;
  return d;
}

qftv::Assignment assignment_from(const std::vector<int>& bits) {
  qftv::Assignment a(static_cast<int>(bits.size()));
  for (std::size_t k = 0; k < bits.size(); ++k) a.set(static_cast<int>(k) + 1, bits[k] != 0);
  return a;
}

}  // namespace

PYBIND11_MODULE(_qftv, m) {
  m.doc() = "QFT circuit verification by rotational abstraction (native core).";

  auto error = py::register_exception<qftv::Error>(m, "QftvError", PyExc_ValueError);
  py::register_exception<qftv::ParseError>(m, "CircuitParseError", error.ptr());
  py::register_exception<qftv::SolverFailure>(m, "SolverFailure", error.ptr());

  py::class_<qftv::Circuit>(m, "Circuit")
      .def_property_readonly("qubits", &qftv::Circuit::qubits)
      .def("__len__", &qftv::Circuit::size)
      .def_property_readonly("gates",
                             [](const qftv::Circuit& c) {
                               py::list out;
                               for (const auto& g : c.gates()) out.append(gate_dict(g));
                               return out;
                             })
      .def("to_json", &qftv::serialize_circuit)
      .def_static("from_json", [](const std::string& text) { return qftv::parse_circuit(text); }, py::arg("text"))
      .def(
          "inject",
          [](const qftv::Circuit& c, const std::string& spec) {
            return qftv::inject_error(c, qftv::parse_error_spec(spec));
          },
          py::arg("spec"), "Apply one mutation such as 'gate:1:1:3' or 'missing-h:2'.")
      .def("split_rotation", &qftv::split_rotation, py::arg("target"), py::arg("ordinal"))
      .def("error_catalog",
           [](const qftv::Circuit& c) {
             std::vector<std::string> out;
             for (const auto& e : qftv::error_catalog(c)) out.push_back(qftv::to_string(e));
             return out;
           })
      .def(py::self == py::self)
      .def("__repr__", [](const qftv::Circuit& c) {
        return "<Circuit qubits=" + std::to_string(c.qubits()) + " gates=" + std::to_string(c.size()) + ">";
      });

  m.def("generate_qft", &qftv::generate_qft, py::arg("m"));
  m.def("gate_count", [](std::uint64_t mm) { return qftv::qft_gate_count(mm); }, py::arg("m"));

  m.def(
      "verify_json",
      [](const qftv::Circuit& c, const std::string& backend, bool exhaustive, unsigned threads,
         const std::optional<std::string>& solver, double timeout) {
        qftv::CheckerConfig cfg;
        cfg.backend = qftv::parse_backend(backend);
        cfg.exhaustive = exhaustive;
        cfg.threads = threads;
        if (cfg.backend != qftv::Backend::Anf) {
          cfg.solver = solver ? qftv::SolverConfig::from_string(*solver) : qftv::SolverConfig::detect();
          if (cfg.solver) cfg.solver->timeout_s = timeout;
        }
        py::gil_scoped_release release;
        return qftv::verify_circuit(c, cfg).to_json();
      },
      py::arg("circuit"), py::arg("backend") = "auto", py::arg("exhaustive") = false, py::arg("threads") = 1,
      py::arg("solver") = py::none(), py::arg("timeout") = 60.0);

  m.def("emit_smt2", &qftv::emit_smt2, py::arg("circuit"), py::arg("qubit"));

  m.def(
      "cross_check_json",
      [](const qftv::Circuit& c, int max_qubits) { return qftv::cross_check(c, max_qubits).to_json(); },
      py::arg("circuit"), py::arg("max_qubits") = qftv::kDefaultSimulationCap);

  m.def(
      "per_qubit_phase",
      [](const std::vector<int>& bits, qftv::Line i) {
        const auto p = qftv::per_qubit_phase(assignment_from(bits), i);
        return py::make_tuple(p.numerator, p.bits);
      },
      py::arg("bits"), py::arg("qubit"), "Phase of qubit i as (numerator, bits), i.e. numerator / 2**bits.");

  m.def(
      "simulate",
      [](const qftv::Circuit& c, const std::vector<int>& bits, int max_qubits) {
        return qftv::simulate(c, assignment_from(bits), max_qubits).amplitudes();
      },
      py::arg("circuit"), py::arg("bits"), py::arg("max_qubits") = qftv::kDefaultSimulationCap);
}
