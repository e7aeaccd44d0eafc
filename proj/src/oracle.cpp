#include "qftv/oracle.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "qftv/abstraction.hpp"

namespace qftv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_cap(int m, int cap) {
  if (m > cap) {
    throw Error("simulation of " + std::to_string(m) + " qubits exceeds the cap of " + std::to_string(cap));
  }
  if (m > 30) throw Error("simulation cap above 30 qubits is not supported");
}

/// e^{2 pi i k / 2^bits}, reducing k first so the angle stays small.
Complex turn(std::uint64_t k, int bits) {
  const std::uint64_t denom = std::uint64_t{1} << bits;
  const double angle = kTwoPi * static_cast<double>(k % denom) / static_cast<double>(denom);
  return std::polar(1.0, angle);
}

}  // namespace

StateVector::StateVector(int qubits, std::vector<Complex> amplitudes)
    : qubits_(qubits), amps_(std::move(amplitudes)) {
  if (qubits_ < 1 || amps_.size() != (std::size_t{1} << qubits_)) {
    throw Error("state vector size does not match 2^" + std::to_string(qubits_));
  }
}

StateVector StateVector::basis(int qubits, std::uint64_t index) {
  std::vector<Complex> amps(std::size_t{1} << qubits);
  amps.at(index) = 1.0;
  return StateVector(qubits, std::move(amps));
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::max_deviation(const StateVector& other) const {
  if (other.dimension() != dimension()) throw Error("state dimension mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < amps_.size(); ++k) worst = std::max(worst, std::abs(amps_[k] - other.amps_[k]));
  return worst;
}

void StateVector::apply_h(Line target) {
  const std::uint64_t bit = mask(target);
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::uint64_t k = 0; k < amps_.size(); ++k) {
    if (k & bit) continue;
    const Complex a0 = amps_[k];
    const Complex a1 = amps_[k | bit];
    amps_[k] = s * (a0 + a1);
    amps_[k | bit] = s * (a0 - a1);
  }
}

void StateVector::apply_controlled_phase(int n, Line control, Line target) {
  const std::uint64_t both = mask(control) | mask(target);
  const Complex phase = std::polar(1.0, kTwoPi / std::ldexp(1.0, n));
  for (std::uint64_t k = 0; k < amps_.size(); ++k) {
    if ((k & both) == both) amps_[k] *= phase;
  }
}

StateVector simulate(const Circuit& c, const Assignment& input, int cap) {
  const int m = c.qubits();
  check_cap(m, cap);
  if (input.size() != m) throw Error("input assignment has the wrong width");
  StateVector state = StateVector::basis(m, input.to_index());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gate(k);
    if (g.input) {
      throw Error("gate " + std::to_string(k + 1) + " reads a rewired input; not simulatable on a fixed register");
    }
    if (g.is_h()) {
      state.apply_h(g.target);
    } else {
      state.apply_controlled_phase(g.order, *g.control, g.target);
    }
    if (std::abs(state.norm_squared() - 1.0) > kAmplitudeTolerance) {
      throw std::logic_error("norm drifted after gate " + std::to_string(k + 1));
    }
  }
  return state;
}

StateVector qft_reference(std::uint64_t j, int m, int cap) {
  check_cap(m, cap);
  const std::uint64_t n = std::uint64_t{1} << m;
  if (j >= n) throw Error("basis index " + std::to_string(j) + " out of range for " + std::to_string(m) + " qubits");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> amps(n);
  for (std::uint64_t k = 0; k < n; ++k) amps[k] = scale * turn(j * k, m);
  return StateVector(m, std::move(amps));
}

std::uint64_t bit_reverse(std::uint64_t index, int bits) {
  std::uint64_t out = 0;
  for (int b = 0; b < bits; ++b) out |= ((index >> b) & 1U) << (bits - 1 - b);
  return out;
}

PhaseFraction per_qubit_phase(const Assignment& input, Line i) {
  const int m = input.size();
  if (i < 1 || i > m) throw Error("qubit " + std::to_string(i) + " out of range");
  std::uint64_t num = 0;
  for (int v = i; v <= m; ++v) num |= static_cast<std::uint64_t>(input[v]) << (m - (v - i) - 1);
  return {num, m};
}

PhaseFraction extract_phase(const StateVector& state, Line i, double* residual) {
  const int m = state.qubits();
  const Complex ref = state[0];
  const Complex one = state[std::size_t{1} << (m - i)];
  if (std::abs(ref) < 1e-12) throw Error("cannot read a relative phase: |0...0> amplitude vanishes");
  double turns = std::arg(one / ref) / kTwoPi;
  if (turns < 0) turns += 1.0;
  const double scaled = std::ldexp(turns, m);
  const double nearest = std::round(scaled);
  if (residual) *residual = std::abs(scaled - nearest) / std::ldexp(1.0, m);
  const std::uint64_t denom = std::uint64_t{1} << m;
  return {static_cast<std::uint64_t>(nearest) % denom, m};
}

std::string OracleReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["qubits"] = qubits;
  j["abstraction_check"] = abstraction_applicable ? (abstraction_pass ? "pass" : "fail") : "skipped";
  if (!skip_reason.empty()) j["skip_reason"] = skip_reason;
  j["dft_check"] = dft_pass ? "pass" : "fail";
  j["max_abstraction_deviation"] = max_abstraction_deviation;
  j["max_dft_deviation"] = max_dft_deviation;
  auto& arr = j["inputs"] = ordered_json::array();
  for (const auto& r : inputs) {
    arr.push_back({{"input", r.input},
                   {"abstraction_pass", r.abstraction_pass},
                   {"dft_pass", r.dft_pass},
                   {"abstraction_deviation", r.abstraction_deviation},
                   {"dft_deviation", r.dft_deviation},
                   {"failing_qubits", r.failing_qubits}});
  }
  return j.dump(2);
}

OracleReport cross_check(const Circuit& c, int cap) {
  const int m = c.qubits();
  check_cap(m, cap);
  OracleReport report;
  report.qubits = m;

  auto run = run_abstract(c);
  const AbstractOutputs* outputs = std::get_if<AbstractOutputs>(&run);
  if (!outputs) {
    report.abstraction_applicable = false;
    report.skip_reason = "type error: " + std::get<TypeError>(run).message();
  } else {
    for (Line q = 1; q <= m; ++q) {
      if ((*outputs)[q].wire == WireType::Control) {
        report.abstraction_applicable = false;
        report.skip_reason = "line " + std::to_string(q) + " never received an H gate";
        break;
      }
    }
  }

  const std::uint64_t n = std::uint64_t{1} << m;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::uint64_t j = 0; j < n; ++j) {
    const Assignment input = Assignment::from_index(j, m);
    const StateVector state = simulate(c, input, cap);
    OracleInputResult r;
    r.input = j;

    const StateVector ref = qft_reference(j, m, cap);
    for (std::uint64_t k = 0; k < n; ++k) {
      r.dft_deviation = std::max(r.dft_deviation, std::abs(state[k] - ref[bit_reverse(k, m)]));
    }
    r.dft_pass = r.dft_deviation <= kAmplitudeTolerance;

    if (report.abstraction_applicable) {
      std::vector<std::uint64_t> phase(static_cast<std::size_t>(m) + 1, 0);
      for (Line q = 1; q <= m; ++q) {
        const LineOutput& line = (*outputs)[q];
        phase[static_cast<std::size_t>(q)] = fraction_numerator(eval_bits(*line.store, line.value, input));
      }
      std::vector<Complex> product(n);
      for (std::uint64_t k = 0; k < n; ++k) {
        std::uint64_t total = 0;
        for (Line q = 1; q <= m; ++q) {
          if (k & (std::uint64_t{1} << (m - q))) total += phase[static_cast<std::size_t>(q)];
        }
        product[k] = scale * turn(total, m);
      }
      r.abstraction_deviation = state.max_deviation(StateVector(m, std::move(product)));
      for (Line q = 1; q <= m; ++q) {
        double residual = 0.0;
        const PhaseFraction sim = extract_phase(state, q, &residual);
        if (sim.numerator != phase[static_cast<std::size_t>(q)] || residual > kAmplitudeTolerance) {
          r.failing_qubits.push_back(q);
        }
      }
      r.abstraction_pass = r.abstraction_deviation <= kAmplitudeTolerance && r.failing_qubits.empty();
    }

    report.max_dft_deviation = std::max(report.max_dft_deviation, r.dft_deviation);
    report.max_abstraction_deviation = std::max(report.max_abstraction_deviation, r.abstraction_deviation);
    report.dft_pass = report.dft_pass && r.dft_pass;
    report.abstraction_pass = report.abstraction_pass && r.abstraction_pass;
    report.inputs.push_back(std::move(r));
  }
  if (!report.abstraction_applicable) report.abstraction_pass = false;
  return report;
}

}  // namespace qftv
