#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sebv/bitstring.hpp"
#include "sebv/rng.hpp"

namespace sebv {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kAmplitudeTolerance = 1e-12;

/// Dense pure state of m qubits. Amplitude index bit i is qubit i.
class StateVector {
 public:
  static constexpr int kMaxQubits = 28;

  /// |0...0> on `num_qubits` qubits; CapacityError outside [1, kMaxQubits].
  explicit StateVector(int num_qubits);

  /// Adopts explicit amplitudes. The length must be a power of two and the
  /// vector must be normalized within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }

  double norm_squared() const;

  void apply_h(int qubit);
  void apply_x(int qubit);
  void apply_cnot(int control, int target);

  /// |x>|y> -> |x>|y xor (key . x mod 2)>, with key position i read from
  /// inputs[i]. Compiled to one CNOT per set key bit.
  void apply_dot_oracle(const BitString& key, std::span<const int> inputs, int output);

  /// Projective computational-basis measurement of `qubits`, collapsing this
  /// state in place. Outcome position j is the value of qubits[j].
  BitString measure(std::span<const int> qubits, Rng& rng);

 private:
  StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

  void check_qubit(int qubit) const;

  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

StateVector new_zero_state(int num_qubits);

struct MeasurementResult {
  BitString outcome;
  StateVector post_state;
};

/// Non-destructive form of StateVector::measure. Sampling uses a single
/// uniform draw against the cumulative distribution in outcome order.
MeasurementResult measure_subset(const StateVector& state, std::span<const int> qubits, Rng& rng);

/// Probability of every outcome value of `qubits`, indexed by the outcome's
/// integer value (position j = qubits[j]).
std::vector<double> subset_distribution(const StateVector& state, std::span<const int> qubits);

/// Outcomes with nonzero probability. Probabilities below kNumericalZero are
/// rounding residue of exact cancellations and are left out.
inline constexpr double kNumericalZero = 1e-24;
std::map<BitString, double> probabilities_of_subset(const StateVector& state,
                                                    std::span<const int> qubits);

}  // namespace sebv
