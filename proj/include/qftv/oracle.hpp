// Dense statevector reference for small circuits.
//
// Amplitude index convention: line 1 is the most significant bit, so the basis
// input |b1 b2 ... bm> has index b1*2^(m-1) + ... + bm.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qftv/circuit.hpp"
#include "qftv/expr.hpp"

namespace qftv {

using Complex = std::complex<double>;

inline constexpr int kDefaultSimulationCap = 12;
inline constexpr double kAmplitudeTolerance = 1e-9;

class StateVector {
 public:
  StateVector(int qubits, std::vector<Complex> amplitudes);
  static StateVector basis(int qubits, std::uint64_t index);

  int qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  const Complex& operator[](std::size_t k) const { return amps_[k]; }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }

  double norm_squared() const;
  /// Largest |a_k - b_k| over all k.
  double max_deviation(const StateVector& other) const;

  void apply_h(Line target);
  /// Phase e^{2 pi i / 2^n} on every basis state where both lines are 1.
  void apply_controlled_phase(int n, Line control, Line target);

 private:
  std::uint64_t mask(Line line) const { return std::uint64_t{1} << (qubits_ - line); }

  int qubits_;
  std::vector<Complex> amps_;
};

/// Applies every gate of `c` to |input>, checking unitarity after each gate.
/// Throws Error when m exceeds `cap` or the circuit rewires gate inputs
/// (those mutations have no fixed-register unitary form).
StateVector simulate(const Circuit& c, const Assignment& input, int cap = kDefaultSimulationCap);

/// amplitude k = e^{2 pi i j k / N} / sqrt(N), N = 2^m.
StateVector qft_reference(std::uint64_t j, int m, int cap = kDefaultSimulationCap);

std::uint64_t bit_reverse(std::uint64_t index, int bits);

/// Exact k/2^bits with k < 2^bits.
struct PhaseFraction {
  std::uint64_t numerator = 0;
  int bits = 0;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(std::uint64_t{1} << bits); }
  bool operator==(const PhaseFraction&) const = default;
};

/// 0.b_i b_{i+1} ... b_m as a fraction over 2^m.
PhaseFraction per_qubit_phase(const Assignment& input, Line i);

/// Reads line i's relative phase from a product state, rounded to the nearest
/// multiple of 2^-m; `residual` receives the rounding error in turns.
PhaseFraction extract_phase(const StateVector& state, Line i, double* residual = nullptr);

struct OracleInputResult {
  std::uint64_t input = 0;
  bool abstraction_pass = true;  // check (a)
  bool dft_pass = true;          // check (b)
  double abstraction_deviation = 0.0;
  double dft_deviation = 0.0;
  std::vector<Line> failing_qubits;
};

struct OracleReport {
  int qubits = 0;
  bool abstraction_applicable = true;  // false for type errors / untouched lines
  std::string skip_reason;
  bool abstraction_pass = true;
  bool dft_pass = true;
  double max_abstraction_deviation = 0.0;
  double max_dft_deviation = 0.0;
  std::vector<OracleInputResult> inputs;

  bool all_pass() const { return abstraction_pass && dft_pass; }
  std::string to_json() const;
};

/// For every basis input: (a) the simulated state equals the product of
/// (|0> + e^{2 pi i phi_q}|1>)/sqrt2 with phi_q read from the abstract
/// outputs, and each extracted phase matches phi_q exactly; (b) the state
/// equals the bit-reversed DFT of the input index.
OracleReport cross_check(const Circuit& c, int cap = kDefaultSimulationCap);

}  // namespace qftv
