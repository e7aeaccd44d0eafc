#include "qftv/checker.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qftv {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Variable expected at bit p of qubit i, or 0 when the bit must be constant 0.
int target_var(Line i, int p, int m) {
  const int v = i + p - 1;
  return v <= m ? v : 0;
}

ConcreteBits target_bits(Line i, int m, const Assignment& a) {
  ConcreteBits out(static_cast<std::size_t>(m), 0);
  for (int p = 1; p <= m; ++p) {
    const int v = target_var(i, p, m);
    out[static_cast<std::size_t>(p - 1)] = v && a[v] ? 1 : 0;
  }
  return out;
}

Counterexample make_counterexample(const ExprStore& store, const SymbolicBitVector& actual, Line i,
                                   int m, Assignment assignment) {
  Counterexample cex{std::move(assignment), {}, {}, {}};
  cex.expected = target_bits(i, m, cex.assignment);
  cex.actual = eval_bits(store, actual, cex.assignment);
  return cex;
}

std::atomic<unsigned> g_work_dir_counter{0};

std::filesystem::path obligation_dir(const CheckerConfig& cfg) {
  if (!cfg.work_dir.empty()) {
    std::filesystem::create_directories(cfg.work_dir);
    return cfg.work_dir;
  }
  static const std::filesystem::path base =
      std::filesystem::temp_directory_path() / ("qftv-" + std::to_string(::getpid()));
  const auto dir = base / std::to_string(g_work_dir_counter++);
  std::filesystem::create_directories(dir);
  return dir;
}

QubitVerdict check_with_solver(const Circuit& c, const LineOutput& line, Line i,
                               const CheckerConfig& cfg, QubitVerdict v) {
  v.backend = BackendUsed::Smt;
  if (!cfg.solver) {
    v.status = QubitStatus::Inconclusive;
    v.note += (v.note.empty() ? "" : "; ") + std::string("SMT backend needed but no solver configured");
    return v;
  }
  const auto dir = obligation_dir(cfg);
  const auto file = dir / ("q" + std::to_string(i) + ".smt2");
  {
    std::ofstream out(file, std::ios::binary);
    out << emit_smt2(c, i);
    if (!out) throw Error("cannot write " + file.string());
  }
  const SolverResult r = invoke_solver(*cfg.solver, file, c.qubits());
  if (cfg.work_dir.empty()) {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  switch (r.kind) {
    case SolverResult::Kind::Unsat: v.status = QubitStatus::Verified; return v;
    case SolverResult::Kind::Sat: {
      Counterexample cex = make_counterexample(*line.store, line.value, i, c.qubits(), r.model.assignment);
      cex.defaulted = r.model.defaulted;
      if (cex.actual == cex.expected) {
        v.status = QubitStatus::Inconclusive;
        v.note = "solver model is not a witness under the abstract semantics";
        return v;
      }
      v.status = QubitStatus::Violation;
      v.counterexample = std::move(cex);
      return v;
    }
    case SolverResult::Kind::Unknown:
    case SolverResult::Kind::Failure:
      v.status = QubitStatus::Inconclusive;
      v.note = std::string("solver ") + to_string(r.kind) + ": " + r.detail;
      return v;
  }
  return v;
}

QubitVerdict check_line(const Circuit& c, const LineOutput& line, Line i, const CheckerConfig& cfg) {
  const int m = c.qubits();
  QubitVerdict v;
  v.qubit = i;
  if (line.wire == WireType::Control) v.note = "line never received an H gate";
  if (cfg.backend == Backend::Smt) return check_with_solver(c, line, i, cfg, std::move(v));

  v.backend = BackendUsed::StructuralAnf;
  const ExprStore& store = *line.store;
  AnfNormalizer norm(store, cfg.anf_budget);
  try {
    for (int p = 1; p <= m; ++p) {
      const ExprId bit = line.value.bit(p);
      const int want = target_var(i, p, m);
      const ExprNode& node = store.node(bit);
      if (want == 0 ? bit == ExprStore::kFalse
                    : node.op == Op::Var && static_cast<int>(node.lhs) == want) {
        continue;
      }
      AnfPoly diff = norm.normalize(bit);
      if (want) diff = diff ^ AnfPoly::variable(static_cast<std::uint32_t>(want));
      if (diff.is_zero()) continue;
      Counterexample cex = make_counterexample(store, line.value, i, m, find_counterexample(diff, m));
      if (cex.actual == cex.expected) {
        throw std::logic_error("counterexample for qubit " + std::to_string(i) + " is not a witness");
      }
      v.status = QubitStatus::Violation;
      v.counterexample = std::move(cex);
      return v;
    }
  } catch (const AnfOverflow& e) {
    if (cfg.backend == Backend::Auto) {
      v.note = e.what();
      return check_with_solver(c, line, i, cfg, std::move(v));
    }
    v.status = QubitStatus::Inconclusive;
    v.note = e.what();
    return v;
  }
  v.status = QubitStatus::Verified;
  return v;
}

}  // namespace

SymbolicBitVector target_vector(ExprStore& store, Line i, int m) {
  if (i < 1 || i > m) {
    throw Error("qubit " + std::to_string(i) + " out of range 1.." + std::to_string(m));
  }
  SymbolicBitVector v = SymbolicBitVector::zeros(m);
  for (int p = 1; p <= m; ++p) {
    if (const int var = target_var(i, p, m)) v.bit(p) = store.var(var);
  }
  return v;
}

Assignment find_counterexample(const AnfPoly& diff, int m) {
  if (diff.is_zero()) throw std::logic_error("find_counterexample called on the zero polynomial");
  Assignment a(m);
  if (diff.has_constant()) return a;
  // Terms are ordered by degree, so the first one has no proper sub-monomial.
  for (auto var : diff.terms().front()) a.set(static_cast<int>(var), true);
  return a;
}

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Anf: return "anf";
    case Backend::Smt: return "smt";
    case Backend::Auto: return "auto";
  }
  return "?";
}

const char* to_string(BackendUsed b) {
  switch (b) {
    case BackendUsed::StructuralAnf: return "structural-anf";
    case BackendUsed::Smt: return "smt";
    case BackendUsed::None: return "none";
  }
  return "?";
}

const char* to_string(QubitStatus s) {
  switch (s) {
    case QubitStatus::Verified: return "Verified";
    case QubitStatus::Violation: return "Violation";
    case QubitStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "Verified";
    case Verdict::Violation: return "Violation";
    case Verdict::TypeError: return "TypeError";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Backend parse_backend(std::string_view text) {
  if (text == "anf") return Backend::Anf;
  if (text == "smt") return Backend::Smt;
  if (text == "auto") return Backend::Auto;
  throw Error("unknown backend '" + std::string(text) + "' (expected anf, smt or auto)");
}

QubitVerdict check_qubit(const Circuit& c, const AbstractOutputs& outputs, Line i,
                         const CheckerConfig& cfg) {
  if (i < 1 || i > outputs.m) {
    throw Error("qubit " + std::to_string(i) + " out of range 1.." + std::to_string(outputs.m));
  }
  const auto start = Clock::now();
  QubitVerdict v = check_line(c, outputs[i], i, cfg);
  v.millis = millis_since(start);
  return v;
}

const QubitVerdict* VerificationReport::first_failure() const {
  for (const auto& q : qubits_checked) {
    if (q.status != QubitStatus::Verified) return &q;
  }
  return nullptr;
}

double VerificationReport::worst_qubit_millis() const {
  double worst = 0.0;
  for (const auto& q : qubits_checked) worst = std::max(worst, q.millis);
  return worst;
}

std::string VerificationReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["qubits"] = qubits;
  j["gates"] = gates;
  j["verdict"] = to_string(verdict);
  if (type_error) {
    j["type_error"] = {{"kind", to_string(type_error->kind)},
                       {"gate", type_error->gate_ordinal},
                       {"line", type_error->line},
                       {"message", type_error->message()}};
  }
  j["total_ms"] = total_millis;
  auto& arr = j["per_qubit"] = ordered_json::array();
  for (const auto& q : qubits_checked) {
    ordered_json rec;
    rec["qubit"] = q.qubit;
    rec["verdict"] = to_string(q.status);
    rec["backend"] = to_string(q.backend);
    rec["millis"] = q.millis;
    if (q.counterexample) {
      const auto& cex = *q.counterexample;
      ordered_json assignment = ordered_json::object();
      for (int v = 1; v <= cex.assignment.size(); ++v) {
        assignment["b" + std::to_string(v)] = cex.assignment[v] ? 1 : 0;
      }
      rec["counterexample"] = {{"assignment", assignment},
                               {"expected", to_string(cex.expected)},
                               {"actual", to_string(cex.actual)}};
      if (!cex.defaulted.empty()) rec["counterexample"]["defaulted"] = cex.defaulted;
    }
    if (!q.note.empty()) rec["note"] = q.note;
    arr.push_back(std::move(rec));
  }
  return j.dump(2);
}

VerificationReport verify_circuit(const Circuit& c, const CheckerConfig& cfg) {
  const auto start = Clock::now();
  VerificationReport report;
  report.qubits = c.qubits();
  report.gates = c.size();

  auto typed = typecheck(c);
  if (auto* err = std::get_if<TypeError>(&typed)) {
    report.verdict = Verdict::TypeError;
    report.type_error = *err;
    report.total_millis = millis_since(start);
    return report;
  }

  const Dataflow flow(c);
  const int m = c.qubits();
  std::vector<std::optional<QubitVerdict>> slots(static_cast<std::size_t>(m));
  std::atomic<int> next{1};
  std::atomic<int> stop_at{std::numeric_limits<int>::max()};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (int i = next++; i <= m; i = next++) {
        if (i > stop_at.load()) break;
        const auto t0 = Clock::now();
        const LineOutput line = run_line(c, flow, i);
        QubitVerdict v = check_line(c, line, i, cfg);
        v.millis = millis_since(t0);
        if (v.status != QubitStatus::Verified && !cfg.exhaustive) {
          int cur = stop_at.load();
          while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
          }
        }
        slots[static_cast<std::size_t>(i - 1)] = std::move(v);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      stop_at = 0;
    }
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(m)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  const int last = std::min(m, stop_at.load());
  bool any_violation = false, any_inconclusive = false;
  for (int i = 1; i <= last; ++i) {
    auto& slot = slots[static_cast<std::size_t>(i - 1)];
    if (!slot) continue;
    any_violation |= slot->status == QubitStatus::Violation;
    any_inconclusive |= slot->status == QubitStatus::Inconclusive;
    report.qubits_checked.push_back(std::move(*slot));
  }
  report.verdict = any_violation      ? Verdict::Violation
                   : any_inconclusive ? Verdict::Inconclusive
                                      : Verdict::Verified;
  report.total_millis = millis_since(start);
  return report;
}

}  // namespace qftv
