// qftv: generate, mutate and verify QFT circuits from the command line.
//
// Exit codes: 0 verified/success, 1 property violation (or oracle mismatch),
// 2 type error, 3 usage or I/O error, 4 solver failure / inconclusive.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qftv/bench.hpp"
#include "qftv/checker.hpp"
#include "qftv/circuit.hpp"
#include "qftv/oracle.hpp"
#include "qftv/smt.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitTypeError = 2;
constexpr int kExitUsage = 3;
constexpr int kExitSolver = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw UsageError("cannot write " + path);
}

qftv::Circuit load_circuit(const std::string& path) { return qftv::parse_circuit(read_input(path)); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// "16,32,100" or "16..2048" (doubling from the first to the last size).
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  for (const auto& item : split(text, ',')) {
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(item.substr(0, dots));
      const int hi = std::stoi(item.substr(dots + 2));
      if (lo < 1 || hi < lo) throw UsageError("bad size range " + item);
      for (long long m = lo; m <= hi; m *= 2) sizes.push_back(static_cast<int>(m));
    } else {
      sizes.push_back(std::stoi(item));
    }
  }
  return sizes;
}

int exit_code(qftv::Verdict v) {
  switch (v) {
    case qftv::Verdict::Verified: return 0;
    case qftv::Verdict::Violation: return kExitViolation;
    case qftv::Verdict::TypeError: return kExitTypeError;
    case qftv::Verdict::Inconclusive: return kExitSolver;
  }
  return kExitUsage;
}

void print_summary(const qftv::VerificationReport& r) {
  std::cout << "qubits " << r.qubits << ", gates " << r.gates << ": " << to_string(r.verdict) << "\n";
  if (r.type_error) std::cout << "  " << r.type_error->message() << "\n";
  for (const auto& q : r.qubits_checked) {
    if (q.status == qftv::QubitStatus::Verified) continue;
    std::cout << "  qubit " << q.qubit << ": " << to_string(q.status) << " [" << to_string(q.backend) << "]";
    if (q.counterexample) {
      std::cout << " with " << q.counterexample->assignment.to_string() << " expected "
                << qftv::to_string(q.counterexample->expected) << " actual "
                << qftv::to_string(q.counterexample->actual);
    }
    if (!q.note.empty()) std::cout << " (" << q.note << ")";
    std::cout << "\n";
  }
  if (r.verdict == qftv::Verdict::Verified) {
    std::cout << "  " << r.qubits_checked.size() << " qubits verified, worst qubit " << r.worst_qubit_millis()
              << " ms\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal verification of QFT circuits via rotational abstraction"};
  app.require_subcommand(1);

  int qubits = 0;
  std::string input = "-", output;
  auto* generate = app.add_subcommand("generate", "Write the canonical QFT circuit");
  generate->add_option("--qubits,-m", qubits, "Number of qubits")->required()->check(CLI::PositiveNumber);
  generate->add_option("-o,--output", output, "Output file (default stdout)");

  std::vector<std::string> error_specs;
  auto* inject = app.add_subcommand("inject", "Apply error mutations to a circuit");
  inject->add_option("--error,-e", error_specs,
                     "gate:T:K:N | control:T:K:C | missing-h:T | duplicate-h:T | h-input:T:S | rn-input:T:K:S "
                     "(repeat to compose)")
      ->required();
  inject->add_option("-i,--input", input, "Input circuit (default stdin)");
  inject->add_option("-o,--output", output, "Output file (default stdout)");

  std::string backend = "auto", solver_cmd;
  bool exhaustive = false, json = false;
  unsigned threads = 1;
  double timeout_s = 60.0;
  auto* verify = app.add_subcommand("verify", "Check the per-qubit correctness property");
  verify->add_option("-i,--input", input, "Input circuit (default stdin)");
  verify->add_option("--backend", backend, "anf, smt or auto")->check(CLI::IsMember({"anf", "smt", "auto"}));
  verify->add_flag("--exhaustive", exhaustive, "Check every qubit instead of stopping at the first failure");
  verify->add_flag("--json", json, "Print the report as JSON");
  verify->add_option("--threads", threads, "Worker threads for per-qubit checks");
  verify->add_option("--solver", solver_cmd, "Solver command (overrides QFTV_SOLVER)");
  verify->add_option("--timeout", timeout_s, "Solver timeout in seconds");

  int max_qubits = qftv::kDefaultSimulationCap;
  auto* oracle = app.add_subcommand("oracle-check", "Cross-check against dense statevector simulation");
  oracle->add_option("-i,--input", input, "Input circuit (default stdin)");
  oracle->add_option("--max-qubits", max_qubits, "Simulation cap");
  oracle->add_flag("--json", json, "Print the full report as JSON");

  std::string sizes_text, scenarios_text = "correct,gate-2,gate-n,control-2,control-n", csv_path, plot_path;
  bool huge = false;
  int repeats = 3;
  double budget_s = 0.0;
  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep and write CSV");
  bench->add_option("--sizes", sizes_text, "Comma list, or A..B for a doubling sweep")->required();
  bench->add_option("--scenarios", scenarios_text, "correct, gate-2, gate-n, control-2, control-n, gate-q<K>");
  bench->add_option("--csv", csv_path, "CSV output file")->required();
  bench->add_option("--plot-data", plot_path, "gnuplot data output file");
  bench->add_flag("--huge", huge, "Allow sizes above 2048 qubits");
  bench->add_option("--repeats", repeats, "Timing repeats per record (minimum is kept)");
  bench->add_option("--budget", budget_s, "Wall-clock budget in seconds (0 = none)");
  bench->add_option("--backend", backend, "anf, smt or auto")->check(CLI::IsMember({"anf", "smt", "auto"}));

  int qubit = 0;
  auto* emit = app.add_subcommand("emit-smt", "Write the SMT-LIB2 obligation for one qubit");
  emit->add_option("-i,--input", input, "Input circuit (default stdin)");
  emit->add_option("--qubit", qubit, "Qubit index (1-based)")->required();
  emit->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto solver_config = [&]() -> std::optional<qftv::SolverConfig> {
    std::optional<qftv::SolverConfig> cfg =
        solver_cmd.empty() ? qftv::SolverConfig::detect() : qftv::SolverConfig::from_string(solver_cmd);
    if (cfg) cfg->timeout_s = timeout_s;
    return cfg;
  };

  try {
    if (*generate) {
      write_output(output, qftv::serialize_circuit(qftv::generate_qft(qubits)));
      return 0;
    }
    if (*inject) {
      qftv::Circuit c = load_circuit(input);
      for (const auto& spec : error_specs) c = qftv::inject_error(c, qftv::parse_error_spec(spec));
      write_output(output, qftv::serialize_circuit(c));
      return 0;
    }
    if (*verify) {
      qftv::CheckerConfig cfg;
      cfg.backend = qftv::parse_backend(backend);
      cfg.exhaustive = exhaustive;
      cfg.threads = threads;
      if (cfg.backend != qftv::Backend::Anf) cfg.solver = solver_config();
      const auto report = qftv::verify_circuit(load_circuit(input), cfg);
      if (json) {
        std::cout << report.to_json() << "\n";
      } else {
        print_summary(report);
      }
      return exit_code(report.verdict);
    }
    if (*oracle) {
      const auto report = qftv::cross_check(load_circuit(input), max_qubits);
      if (json) {
        std::cout << report.to_json() << "\n";
      } else {
        std::cout << "abstraction check: "
                  << (report.abstraction_applicable ? (report.abstraction_pass ? "pass" : "FAIL") : "skipped")
                  << " (max deviation " << report.max_abstraction_deviation << ")";
        if (!report.skip_reason.empty()) std::cout << " [" << report.skip_reason << "]";
        std::cout << "\nDFT check: " << (report.dft_pass ? "pass" : "FAIL") << " (max deviation "
                  << report.max_dft_deviation << ")\n";
      }
      const bool ok = (!report.abstraction_applicable || report.abstraction_pass) && report.dft_pass;
      return ok ? 0 : kExitViolation;
    }
    if (*bench) {
      qftv::BenchConfig cfg;
      cfg.sizes = parse_sizes(sizes_text);
      for (const auto& s : split(scenarios_text, ',')) cfg.scenarios.push_back(qftv::Scenario::parse(s));
      cfg.checker.backend = qftv::parse_backend(backend);
      if (cfg.checker.backend != qftv::Backend::Anf) cfg.checker.solver = solver_config();
      cfg.repeats = repeats;
      cfg.budget_s = budget_s;
      if (huge) cfg.max_qubits = std::numeric_limits<int>::max();
      const auto result = qftv::run_bench(cfg);
      write_output(csv_path, qftv::to_csv(result));
      if (!plot_path.empty()) write_output(plot_path, qftv::to_plot_data(result));
      std::cerr << result.records.size() << " records" << (result.truncated ? " (truncated)" : "") << "\n";
      return 0;
    }
    if (*emit) {
      write_output(output, qftv::emit_smt2(load_circuit(input), qubit));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "qftv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qftv::SolverFailure& e) {
    std::cerr << "qftv: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const qftv::Error& e) {
    std::cerr << "qftv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qftv: bad number: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
