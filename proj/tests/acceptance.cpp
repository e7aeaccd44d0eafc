// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "qftv/bench.hpp"
#include "qftv/checker.hpp"
#include "qftv/oracle.hpp"

using namespace qftv;

namespace {

using Clock = std::chrono::steady_clock;

enum class Outcome { Pass, Fail, Skip };

struct Result {
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

CheckerConfig anf_config(bool exhaustive = false) {
  CheckerConfig cfg;
  cfg.backend = Backend::Anf;
  cfg.exhaustive = exhaustive;
  return cfg;
}

/// Re-evaluates a reported witness from scratch: the abstract line value and
/// the expected bits 0.b_i...b_m must differ under the witness assignment.
bool witness_is_valid(const Circuit& c, const QubitVerdict& v) {
  if (!v.counterexample) return false;
  const auto run = run_abstract(c);
  const auto* out = std::get_if<AbstractOutputs>(&run);
  if (!out) return false;
  const LineOutput& line = (*out)[v.qubit];
  const Assignment& a = v.counterexample->assignment;
  const ConcreteBits actual = eval_bits(*line.store, line.value, a);
  ConcreteBits expected(static_cast<std::size_t>(c.qubits()), 0);
  for (int p = 1; p + v.qubit - 1 <= c.qubits(); ++p) expected[static_cast<std::size_t>(p - 1)] = a[p + v.qubit - 1];
  return actual != expected && actual == v.counterexample->actual && expected == v.counterexample->expected;
}

std::vector<Circuit> single_error_sweep(int max_m) {
  std::vector<Circuit> out;
  for (int m = 1; m <= max_m; ++m) {
    const Circuit base = generate_qft(m);
    for (const ErrorSpec& e : error_catalog(base)) out.push_back(inject_error(base, e));
  }
  return out;
}

// ---------------------------------------------------------------------------

Result criterion1() {
  const std::vector<std::pair<int, std::uint64_t>> table{
      {16, 136},           {32, 528},           {64, 2080},         {128, 8256},
      {256, 32896},        {512, 131328},       {1024, 524800},     {2048, 2098176},
      {4096, 8390656},     {8192, 33558528},    {10000, 50005000}};
  const auto start = Clock::now();
  std::ostringstream bad;
  for (const auto& [m, gates] : table) {
    const auto formula = qft_gate_count(static_cast<std::uint64_t>(m));
    if (formula != gates) bad << " formula(" << m << ")=" << formula;
    if (m <= 2048) {
      const auto materialized = generate_qft(m).size();
      if (materialized != gates) bad << " generate_qft(" << m << ")=" << materialized;
    }
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << "11 sizes, materialized up to 2048, " << t << " s";
  if (!bad.str().empty()) return {Outcome::Fail, d.str() + ";" + bad.str()};
  if (t >= 1.0) return {Outcome::Fail, d.str() + " (limit 1 s)"};
  return {Outcome::Pass, d.str()};
}

Result criterion2() {
  const auto start = Clock::now();
  BenchConfig cfg;
  cfg.sizes = {16, 32, 64, 128, 256, 512, 1024, 2048};
  cfg.scenarios = {Scenario::parse("correct")};
  cfg.checker = anf_config(true);
  cfg.repeats = 3;
  const BenchResult result = run_bench(cfg);
  std::vector<double> gates, time, mem;
  std::ostringstream bad;
  for (const auto& r : result.records) {
    if (r.verdict != Verdict::Verified) bad << " m=" << r.qubits << ":" << to_string(r.verdict);
    gates.push_back(static_cast<double>(r.gates));
    time.push_back(r.time_s);
    mem.push_back(r.mem_mb);
  }
  const double t = seconds_since(start);
  const double rho_t = spearman(gates, time), rho_m = spearman(gates, mem);
  std::ostringstream d;
  d << "m=16..2048 Verified, " << t << " s, rank(time,gates)=" << rho_t << ", rank(mem,gates)=" << rho_m;
  if (!bad.str().empty()) return {Outcome::Fail, d.str() + ";" + bad.str()};
  if (t >= 600.0) return {Outcome::Fail, d.str() + " (limit 600 s)"};
  if (rho_t < 0.9 || rho_m < 0.9) return {Outcome::Fail, d.str() + " (need >= 0.9)"};
  return {Outcome::Pass, d.str()};
}

/// Shared by criteria 3 and 6.
struct SweepOutcome {
  std::size_t circuits = 0, caught = 0, violations = 0, valid_witnesses = 0;
  double seconds = 0;
  std::string first_escape;  // JSON of the first mutant that verified, if any
};

const SweepOutcome& sweep() {
  static const SweepOutcome s = [] {
    SweepOutcome o;
    const auto start = Clock::now();
    for (const Circuit& c : single_error_sweep(8)) {
      ++o.circuits;
      const auto r = verify_circuit(c, anf_config());
      if (r.verdict != Verdict::Verified) {
        ++o.caught;
      } else if (o.first_escape.empty()) {
        o.first_escape = serialize_circuit(c);
      }
      if (r.verdict == Verdict::Violation) {
        ++o.violations;
        if (witness_is_valid(c, *r.first_failure())) ++o.valid_witnesses;
      }
    }
    o.seconds = seconds_since(start);
    return o;
  }();
  return s;
}

Result criterion3() {
  const SweepOutcome& s = sweep();
  std::ostringstream d;
  d << s.caught << "/" << s.circuits << " single-error mutants of qft(1..8) rejected, " << s.seconds << " s";
  if (s.caught != s.circuits) return {Outcome::Fail, d.str() + "; first escape:\n" + s.first_escape};
  if (s.seconds >= 120.0) return {Outcome::Fail, d.str() + " (limit 120 s)"};
  return {Outcome::Pass, d.str()};
}

Result criterion4() {
  std::mt19937 rng(20240601);
  std::ostringstream bad;
  int verified = 0, total = 0;
  for (int m : {4, 8, 16}) {
    const Circuit base = generate_qft(m);
    // Splittable sites: rotations R_n with n < m.
    std::vector<std::pair<Line, int>> sites;
    for (Line t = 1; t <= m; ++t) {
      const auto on = base.gates_on(t);
      for (std::size_t k = 1; k < on.size(); ++k) {
        if (base.gate(on[k]).order < m) sites.emplace_back(t, static_cast<int>(k));
      }
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto [t, ord] = sites[rng() % sites.size()];
      ++total;
      if (verify_circuit(split_rotation(base, t, ord), anf_config(true)).verdict == Verdict::Verified) {
        ++verified;
      } else {
        bad << " m=" << m << " line " << t << " rotation " << ord;
      }
    }
  }
  std::ostringstream d;
  d << verified << "/" << total << " split-rotation circuits Verified at m=4,8,16";
  return {verified == total ? Outcome::Pass : Outcome::Fail, d.str() + bad.str()};
}

Result criterion5() {
  const auto start = Clock::now();
  double worst_dft = 0, worst_abs = 0;
  std::ostringstream bad;
  std::size_t inputs = 0;
  for (int m = 1; m <= 8; ++m) {
    const OracleReport r = cross_check(generate_qft(m));
    inputs += r.inputs.size();
    worst_dft = std::max(worst_dft, r.max_dft_deviation);
    worst_abs = std::max(worst_abs, r.max_abstraction_deviation);
    if (!r.abstraction_applicable || !r.all_pass()) bad << " m=" << m;
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << inputs << " basis inputs, max DFT deviation " << worst_dft << ", max product-state deviation " << worst_abs
    << ", exact phases, " << t << " s";
  if (!bad.str().empty()) return {Outcome::Fail, d.str() + "; failing" + bad.str()};
  if (t >= 60.0) return {Outcome::Fail, d.str() + " (limit 60 s)"};
  return {Outcome::Pass, d.str()};
}

Result criterion6() {
  const SweepOutcome& s = sweep();
  std::ostringstream d;
  d << s.valid_witnesses << "/" << s.violations << " violation witnesses re-evaluate to actual != expected";
  return {s.violations > 0 && s.valid_witnesses == s.violations ? Outcome::Pass : Outcome::Fail, d.str()};
}

Result criterion7() {
  const auto solver = SolverConfig::detect();
  if (!solver) return {Outcome::Skip, "no QF_BV solver configured (set QFTV_SOLVER or put z3 on PATH)"};
  const auto start = Clock::now();
  std::size_t agree = 0, total = 0, sat_models = 0, valid_models = 0;
  std::ostringstream bad;
  auto compare = [&](const Circuit& c, bool exhaustive) {
    CheckerConfig smt = anf_config(exhaustive);
    smt.backend = Backend::Smt;
    smt.solver = solver;
    const auto a = verify_circuit(c, anf_config(exhaustive));
    const auto b = verify_circuit(c, smt);
    ++total;
    if (a.verdict == b.verdict) {
      ++agree;
    } else if (bad.str().size() < 200) {
      bad << " [m=" << c.qubits() << " anf=" << to_string(a.verdict) << " smt=" << to_string(b.verdict) << "]";
    }
    for (const auto& q : b.qubits_checked) {
      if (q.backend != BackendUsed::Smt || !q.counterexample) continue;
      ++sat_models;
      if (witness_is_valid(c, q)) ++valid_models;
    }
  };
  for (int m : {16, 32, 64}) compare(generate_qft(m), true);
  for (const Circuit& c : single_error_sweep(8)) compare(c, false);
  std::ostringstream d;
  d << agree << "/" << total << " verdicts agree, " << valid_models << "/" << sat_models
    << " sat models valid counterexamples, " << seconds_since(start) << " s";
  const bool ok = agree == total && valid_models == sat_models;
  return {ok ? Outcome::Pass : Outcome::Fail, d.str() + bad.str()};
}

Result criterion8() {
  const int m = 256;
  std::vector<int> positions;
  for (int k = 0; k < 8; ++k) positions.push_back(1 + (k * 254 + 3) / 7);  // 1..255
  BenchConfig cfg;
  cfg.sizes = {m};
  for (int q : positions) cfg.scenarios.push_back(Scenario::parse("gate-q" + std::to_string(q)));
  cfg.checker = anf_config();
  cfg.repeats = 25;
  const BenchResult result = run_bench(cfg);
  std::vector<double> pos, time;
  std::ostringstream d, bad;
  d << "positions";
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& r = result.records[k];
    if (r.verdict != Verdict::Violation || r.failing_qubit != positions[k]) bad << " q" << positions[k];
    pos.push_back(positions[k]);
    time.push_back(r.time_s);
    d << " " << positions[k] << ":" << r.time_s * 1e6 << "us";
  }
  const double rho = spearman(pos, time);
  d << ", rank(time,position)=" << rho;
  if (!bad.str().empty()) return {Outcome::Fail, d.str() + "; wrong failing qubit at" + bad.str()};
  return {rho <= -0.8 ? Outcome::Pass : Outcome::Fail, d.str() + (rho <= -0.8 ? "" : " (need <= -0.8)")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"gate-count reproduction", criterion1},
      {"correct circuits verify (m=16..2048)", criterion2},
      {"single-error sweep (m<=8)", criterion3},
      {"split-rotation equivalence", criterion4},
      {"oracle fidelity (m=1..8)", criterion5},
      {"counterexample self-validation", criterion6},
      {"SMT agreement", criterion7},
      {"error-position trend (m=256)", criterion8},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Result r;
    try {
      r = criteria[k].second();
    } catch (const std::exception& e) {
      r = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Skip ? "SKIP" : "FAIL";
    failures += r.outcome == Outcome::Fail ? 1 : 0;
    std::cout << "criterion " << (k + 1) << " " << tag << ": " << criteria[k].first << ": " << r.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
