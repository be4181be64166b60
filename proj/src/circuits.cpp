#include "sebv/circuits.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <sstream>

#include "sebv/errors.hpp"

namespace sebv {
namespace {

void append_bell_source(CircuitDescription& c, const RegisterLayout& layout) {
  for (int i = 0; i < layout.n; ++i) {
    c.gates.push_back(Gate::h(layout.alice_input[i]));
    c.gates.push_back(Gate::cnot(layout.alice_input[i], layout.bob_input[i]));
  }
  c.gates.push_back(Gate::x(layout.alice_output));
  c.gates.push_back(Gate::x(layout.bob_output));
}

void append_oracle(CircuitDescription& c, const BitString& key, const std::vector<int>& inputs,
                   int output) {
  for (int i = 0; i < key.width(); ++i) {
    if (key.bit(i)) c.gates.push_back(Gate::cnot(inputs[i], output));
  }
}

void check_key_width(const BitString& key, int n, const char* name) {
  if (key.width() != n) {
    throw ArgumentError(std::string(name) + " has width " + std::to_string(key.width()) +
                        ", expected " + std::to_string(n));
  }
}

void apply_gate(StateVector& state, const Gate& g) {
  switch (g.kind) {
    case GateKind::H:
      state.apply_h(g.qubits[0]);
      break;
    case GateKind::X:
      state.apply_x(g.qubits[0]);
      break;
    case GateKind::CNOT:
      state.apply_cnot(g.qubits[0], g.qubits[1]);
      break;
  }
}

}  // namespace

RegisterLayout RegisterLayout::for_key_width(int n) {
  if (n < 1 || n > kMaxKeyWidth) {
    throw CapacityError("key width " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxKeyWidth) + "]");
  }
  RegisterLayout layout;
  layout.n = n;
  for (int i = 0; i < n; ++i) {
    layout.alice_input.push_back(i);
    layout.bob_input.push_back(n + 1 + i);
  }
  layout.alice_output = n;
  layout.bob_output = 2 * n + 1;
  return layout;
}

std::vector<int> RegisterLayout::joint_input() const {
  std::vector<int> out = alice_input;
  out.insert(out.end(), bob_input.begin(), bob_input.end());
  return out;
}

void CircuitDescription::validate() const {
  if (num_qubits < 1 || num_qubits > StateVector::kMaxQubits) {
    throw CapacityError("circuit qubit count " + std::to_string(num_qubits) + " out of range");
  }
  auto check = [&](int q) {
    if (q < 0 || q >= num_qubits) {
      throw IndexError("circuit references qubit " + std::to_string(q) + " of " +
                       std::to_string(num_qubits));
    }
  };
  for (const Gate& g : gates) {
    check(g.qubits[0]);
    if (g.kind == GateKind::CNOT) {
      check(g.qubits[1]);
      if (g.qubits[0] == g.qubits[1]) throw ArgumentError("CNOT control equals target");
    }
  }
  std::uint64_t seen = 0;
  for (int q : measured) {
    check(q);
    if (seen & (std::uint64_t{1} << q)) throw ArgumentError("qubit measured twice");
    seen |= std::uint64_t{1} << q;
  }
}

StateVector simulate(const CircuitDescription& circuit) {
  circuit.validate();
  StateVector state(circuit.num_qubits);
  for (const Gate& g : circuit.gates) apply_gate(state, g);
  return state;
}

CircuitDescription build_bell_circuit(int pairs) {
  if (pairs < 1 || 2 * pairs > StateVector::kMaxQubits) {
    throw CapacityError("Bell pair count " + std::to_string(pairs) + " out of range");
  }
  CircuitDescription c;
  c.num_qubits = 2 * pairs;
  for (int i = 0; i < pairs; ++i) {
    c.gates.push_back(Gate::h(i));
    c.gates.push_back(Gate::cnot(i, pairs + i));
  }
  for (int q = 0; q < c.num_qubits; ++q) c.measured.push_back(q);
  return c;
}

CircuitDescription build_source_circuit(int n) {
  const RegisterLayout layout = RegisterLayout::for_key_width(n);
  CircuitDescription c;
  c.num_qubits = layout.num_qubits();
  append_bell_source(c, layout);
  return c;
}

StateVector prepare_bell_pairs(int n) {
  // Written out directly: amplitude 2^{-n/2} on |1>_B |x>_B |1>_A |x>_A.
  const RegisterLayout layout = RegisterLayout::for_key_width(n);
  std::vector<Amplitude> amps(std::size_t{1} << layout.num_qubits(), Amplitude{0.0, 0.0});
  const double weight = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << n));
  const std::size_t outputs =
      (std::size_t{1} << layout.alice_output) | (std::size_t{1} << layout.bob_output);
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    amps[x | (x << layout.bob_input.front()) | outputs] = weight;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

CircuitDescription build_bv_circuit(const BitString& secret) {
  const int n = secret.width();
  CircuitDescription c;
  c.num_qubits = n + 1;
  std::vector<int> inputs;
  for (int i = 0; i < n; ++i) inputs.push_back(i);
  const int output = n;

  c.gates.push_back(Gate::x(output));
  for (int q : inputs) c.gates.push_back(Gate::h(q));
  c.gates.push_back(Gate::h(output));
  append_oracle(c, secret, inputs, output);
  for (int q : inputs) c.gates.push_back(Gate::h(q));
  c.measured = inputs;
  return c;
}

BitString run_bv(const BitString& secret, Rng& rng) {
  const CircuitDescription c = build_bv_circuit(secret);
  StateVector state = simulate(c);
  return state.measure(c.measured, rng);
}

std::vector<ClassicalQuery> classical_bv_queries(const BitString& secret) {
  const int n = secret.width();
  std::vector<ClassicalQuery> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int position = n - 1; position >= 0; --position) {
    const BitString query = BitString::one_hot(n, position);
    out.push_back({query, secret.dot(query)});
  }
  return out;
}

BitString reassemble_classical(const std::vector<ClassicalQuery>& queries) {
  if (queries.empty()) throw ArgumentError("no classical queries to reassemble");
  const int n = queries.front().query.width();
  std::uint32_t bits = 0;
  for (const ClassicalQuery& q : queries) {
    if (q.query.width() != n || q.query.popcount() != 1) {
      throw ArgumentError("classical queries must be one-hot of equal width");
    }
    if (q.answer) bits |= q.query.value();
  }
  return BitString(n, bits);
}

CircuitDescription build_sebv_circuit(int n, const BitString& key_a, const BitString& key_b) {
  const RegisterLayout layout = RegisterLayout::for_key_width(n);
  check_key_width(key_a, n, "Alice's key");
  check_key_width(key_b, n, "Bob's key");

  CircuitDescription c;
  c.num_qubits = layout.num_qubits();
  append_bell_source(c, layout);
  c.gates.push_back(Gate::h(layout.alice_output));
  c.gates.push_back(Gate::h(layout.bob_output));
  append_oracle(c, key_a, layout.alice_input, layout.alice_output);
  append_oracle(c, key_b, layout.bob_input, layout.bob_output);
  for (int q : layout.alice_input) c.gates.push_back(Gate::h(q));
  for (int q : layout.bob_input) c.gates.push_back(Gate::h(q));
  c.measured = layout.joint_input();
  return c;
}

std::string export_qasm(const CircuitDescription& circuit) {
  circuit.validate();
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.num_qubits << "];\n";
  // OpenQASM has no zero-width registers.
  const std::size_t clbits = circuit.measured.empty() ? 1 : circuit.measured.size();
  out << "creg c[" << clbits << "];\n";
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::H:
        out << "h q[" << g.qubits[0] << "];\n";
        break;
      case GateKind::X:
        out << "x q[" << g.qubits[0] << "];\n";
        break;
      case GateKind::CNOT:
        out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
        break;
    }
  }
  for (std::size_t j = 0; j < circuit.measured.size(); ++j) {
    out << "measure q[" << circuit.measured[j] << "] -> c[" << j << "];\n";
  }
  return out.str();
}

}  // namespace sebv
