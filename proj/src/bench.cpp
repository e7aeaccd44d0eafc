#include "qftv/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace qftv {

Scenario Scenario::parse(std::string_view text) {
  Scenario s;
  if (text == "correct") return s;
  std::string_view rest;
  if (text.starts_with("gate-")) {
    s.kind = Kind::IncorrectGate;
    rest = text.substr(5);
  } else if (text.starts_with("incorrect-gate@")) {
    s.kind = Kind::IncorrectGate;
    rest = text.substr(15);
  } else if (text.starts_with("control-")) {
    s.kind = Kind::IncorrectControl;
    rest = text.substr(8);
  } else if (text.starts_with("incorrect-control@")) {
    s.kind = Kind::IncorrectControl;
    rest = text.substr(18);
  } else {
    throw Error("unknown scenario '" + std::string(text) + "'");
  }
  if (rest == "2" || rest == "n") {
    s.position = std::string(rest);
    return s;
  }
  if (s.kind == Kind::IncorrectGate && rest.size() > 1 && rest[0] == 'q') {
    int k = 0;
    auto [ptr, ec] = std::from_chars(rest.data() + 1, rest.data() + rest.size(), k);
    if (ec == std::errc{} && ptr == rest.data() + rest.size() && k >= 1) {
      s.position = std::string(rest);
      return s;
    }
  }
  throw Error("bad scenario position in '" + std::string(text) + "' (expected 2, n, or q<K> for gate errors)");
}

std::string Scenario::name() const {
  switch (kind) {
    case Kind::Correct: return "correct";
    case Kind::IncorrectGate: return "incorrect-gate@" + position;
    case Kind::IncorrectControl: return "incorrect-control@" + position;
  }
  return "?";
}

std::optional<ErrorSpec> Scenario::error_for(int m) const {
  if (kind == Kind::Correct) return std::nullopt;
  if (m < 3) throw Error("scenario " + name() + " needs at least 3 qubits");
  if (kind == Kind::IncorrectGate) {
    // Gate-2: R3 in place of R2 on qubit 1. Gate-n: R_{m-1} in place of R_m.
    if (position == "2") return IncorrectGateOrder{1, 1, 3};
    if (position == "n") return IncorrectGateOrder{1, m - 1, m - 1};
    const int q = std::stoi(position.substr(1));
    if (q > m - 1) {
      throw Error("scenario " + name() + ": qubit " + std::to_string(q) + " has no rotation gate when m = " +
                  std::to_string(m));
    }
    return IncorrectGateOrder{q, 1, 3};
  }
  // Control-2: R2 on qubit 1 controlled by 3. Control-n: R_m controlled by m-1.
  if (position == "2") return IncorrectControl{1, 1, 3};
  return IncorrectControl{1, m - 1, m - 1};
}

double resident_mb() {
  std::ifstream statm("/proc/self/statm");
  long pages_total = 0, pages_resident = 0;
  if (!(statm >> pages_total >> pages_resident)) return 0.0;
  return static_cast<double>(pages_resident) * static_cast<double>(::sysconf(_SC_PAGESIZE)) / (1024.0 * 1024.0);
}

BenchResult run_bench(const BenchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  BenchResult result;
  for (int m : cfg.sizes) {
    if (m < 1) throw Error("benchmark size must be >= 1");
    if (m > cfg.max_qubits) {
      throw Error("size " + std::to_string(m) + " exceeds the desk-scale cap of " +
                  std::to_string(cfg.max_qubits) + " qubits (use --huge)");
    }
  }
  for (int m : cfg.sizes) {
    const Circuit correct = generate_qft(m);
    for (const Scenario& scenario : cfg.scenarios) {
      if (cfg.budget_s > 0 && std::chrono::duration<double>(Clock::now() - start).count() > cfg.budget_s) {
        result.truncated = true;
        return result;
      }
      const auto error = scenario.error_for(m);
      const Circuit circuit = error ? inject_error(correct, *error) : correct;
      CheckerConfig checker = cfg.checker;
      checker.exhaustive = !error.has_value();

      BenchRecord rec;
      rec.qubits = m;
      rec.gates = circuit.size();
      rec.scenario = scenario.name();
      rec.time_s = std::numeric_limits<double>::infinity();
      for (int rep = 0; rep < std::max(1, cfg.repeats); ++rep) {
        const VerificationReport report = verify_circuit(circuit, checker);
        double millis = report.total_millis;
        if (report.verdict == Verdict::Verified) {
          millis = report.worst_qubit_millis();
        } else if (const QubitVerdict* bad = report.first_failure()) {
          millis = bad->millis;
          rec.failing_qubit = bad->qubit;
        }
        rec.verdict = report.verdict;
        rec.backend = report.qubits_checked.empty() ? "typecheck" : to_string(report.qubits_checked.back().backend);
        rec.time_s = std::min(rec.time_s, millis / 1000.0);
        rec.mem_mb = std::max(rec.mem_mb, resident_mb());
      }
      result.records.push_back(std::move(rec));
    }
  }
  return result;
}

std::string to_csv(const BenchResult& result) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  os << std::setprecision(6);
  for (const auto& r : result.records) {
    os << r.qubits << ',' << r.gates << ',' << r.scenario << ',' << to_string(r.verdict) << ',' << r.backend
       << ',' << r.time_s << ',' << std::fixed << std::setprecision(1) << r.mem_mb << std::defaultfloat
       << std::setprecision(6) << "\n";
  }
  if (result.truncated) os << "# truncated: sweep budget exceeded\n";
  return os.str();
}

std::string to_plot_data(const BenchResult& result) {
  std::vector<std::string> order;
  for (const auto& r : result.records) {
    if (std::find(order.begin(), order.end(), r.scenario) == order.end()) order.push_back(r.scenario);
  }
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& scenario : order) {
    os << "# scenario " << scenario << "\n# qubits gates failing_qubit time_s mem_mb\n";
    for (const auto& r : result.records) {
      if (r.scenario != scenario) continue;
      os << r.qubits << ' ' << r.gates << ' ' << r.failing_qubit << ' ' << r.time_s << ' ' << r.mem_mb << "\n";
    }
    os << "\n\n";
  }
  return os.str();
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t k = 0; k < idx.size();) {
    std::size_t run = k + 1;
    while (run < idx.size() && v[idx[run]] == v[idx[k]]) ++run;
    const double avg = (static_cast<double>(k + run - 1)) / 2.0 + 1.0;
    for (std::size_t t = k; t < run; ++t) r[idx[t]] = avg;
    k = run;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("spearman needs two equal-length samples of size >= 2");
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace qftv
