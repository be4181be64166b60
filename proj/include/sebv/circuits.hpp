#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "sebv/bitstring.hpp"
#include "sebv/rng.hpp"
#include "sebv/state_vector.hpp"

namespace sebv {

inline constexpr int kMaxKeyWidth = 13;

/// Global qubit indices of the four registers of a two-party circuit with
/// n-bit keys: Alice's input [0, n), her output n, Bob's input [n+1, 2n],
/// his output 2n+1.
struct RegisterLayout {
  int n = 0;
  std::vector<int> alice_input;
  int alice_output = 0;
  std::vector<int> bob_input;
  int bob_output = 0;

  /// CapacityError unless 1 <= n <= kMaxKeyWidth.
  static RegisterLayout for_key_width(int n);

  int num_qubits() const { return 2 * n + 2; }
  /// Both input registers, Alice's first.
  std::vector<int> joint_input() const;
};

enum class GateKind { H, X, CNOT };

struct Gate {
  GateKind kind;
  // For CNOT: {control, target}. Single-qubit gates use only qubits[0].
  std::array<int, 2> qubits;

  static Gate h(int q) { return Gate{GateKind::H, {q, -1}}; }
  static Gate x(int q) { return Gate{GateKind::X, {q, -1}}; }
  static Gate cnot(int control, int target) { return Gate{GateKind::CNOT, {control, target}}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gates in application order, then a terminal measurement of `measured`
/// into classical bits 0, 1, ... in list order.
struct CircuitDescription {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> measured;

  /// Throws IndexError / ArgumentError on any malformed gate or measurement.
  void validate() const;

  friend bool operator==(const CircuitDescription&, const CircuitDescription&) = default;
};

/// Runs the gate list on |0...0>; measurements are not applied.
StateVector simulate(const CircuitDescription& circuit);

/// `pairs` Phi+ pairs on 2*pairs qubits, pair i on qubits (i, pairs + i),
/// all qubits measured.
CircuitDescription build_bell_circuit(int pairs);

/// Gate form of the two-party initial state: H and CNOT per pair, Alice's
/// pairs ascending, then X on both outputs.
CircuitDescription build_source_circuit(int n);

/// Initial two-party state: Alice's and Bob's input qubit i share a Phi+
/// pair and both output qubits hold |1>.
StateVector prepare_bell_pairs(int n);

/// Textbook Bernstein-Vazirani on n+1 qubits: inputs [0, n), output n.
CircuitDescription build_bv_circuit(const BitString& secret);
/// Executes the BV circuit and measures the input register.
BitString run_bv(const BitString& secret, Rng& rng);

struct ClassicalQuery {
  BitString query;
  bool answer;
};
/// The n one-hot queries of the classical strategy, most significant first.
std::vector<ClassicalQuery> classical_bv_queries(const BitString& secret);
/// Reassembles the secret from the answers of classical_bv_queries.
BitString reassemble_classical(const std::vector<ClassicalQuery>& queries);

/// Full two-party circuit over RegisterLayout::for_key_width(n): Bell source,
/// output preparation, Hadamard on both outputs, both dot-product oracles,
/// Hadamard on both input registers, measurement of Alice's then Bob's input.
/// With key_b all-zero this is the semi-symmetric circuit.
CircuitDescription build_sebv_circuit(int n, const BitString& key_a, const BitString& key_b);

/// OpenQASM 2.0 text; byte-identical for equal circuits.
std::string export_qasm(const CircuitDescription& circuit);

}  // namespace sebv
