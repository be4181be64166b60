#include "sebv/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sebv/errors.hpp"

namespace sebv {
namespace {

void check_subset(std::span<const int> qubits, int num_qubits) {
  if (qubits.empty()) throw ArgumentError("measurement requires at least one qubit");
  if (qubits.size() > static_cast<std::size_t>(BitString::kMaxWidth)) {
    throw CapacityError("cannot measure more than " + std::to_string(BitString::kMaxWidth) +
                        " qubits at once");
  }
  std::uint64_t seen = 0;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) {
      throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                       std::to_string(num_qubits) + " qubits");
    }
    if (seen & (std::uint64_t{1} << q)) {
      throw ArgumentError("qubit " + std::to_string(q) + " listed twice");
    }
    seen |= std::uint64_t{1} << q;
  }
}

std::uint32_t gather(std::size_t index, std::span<const int> qubits) {
  std::uint32_t out = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    out |= static_cast<std::uint32_t>((index >> qubits[j]) & 1u) << j;
  }
  return out;
}

// Index bits that an outcome value fixes, and their values for `outcome`.
std::size_t qubit_mask(std::span<const int> qubits) {
  std::size_t mask = 0;
  for (int q : qubits) mask |= std::size_t{1} << q;
  return mask;
}

std::size_t scatter(std::uint32_t outcome, std::span<const int> qubits) {
  std::size_t pattern = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if ((outcome >> j) & 1u) pattern |= std::size_t{1} << qubits[j];
  }
  return pattern;
}

bool is_ascending_run(std::span<const int> qubits) {
  for (std::size_t j = 1; j < qubits.size(); ++j) {
    if (qubits[j] != qubits[0] + static_cast<int>(j)) return false;
  }
  return true;
}

// Summation runs in amplitude-index order so results are reproducible.
std::vector<double> distribution(std::span<const Amplitude> amplitudes,
                                 std::span<const int> qubits) {
  std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
  if (is_ascending_run(qubits)) {
    const int shift = qubits[0];
    const std::size_t low = probs.size() - 1;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      probs[(i >> shift) & low] += std::norm(amplitudes[i]);
    }
  } else {
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      probs[gather(i, qubits)] += std::norm(amplitudes[i]);
    }
  }
  return probs;
}

// Inserts a zero bit at `position`, shifting higher bits up.
constexpr std::size_t insert_zero(std::size_t value, int position) {
  const std::size_t low = (std::size_t{1} << position) - 1;
  return ((value & ~low) << 1) | (value & low);
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                        std::to_string(kMaxQubits) + "]");
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw ArgumentError("amplitude count must be a power of two >= 2");
  }
  const int m = std::countr_zero(size);
  if (m > kMaxQubits) throw CapacityError("too many amplitudes");
  StateVector out(m, std::move(amplitudes));
  if (std::abs(out.norm_squared() - 1.0) > kNormTolerance) {
    throw ArgumentError("amplitudes are not normalized");
  }
  return out;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range for " +
                     std::to_string(num_qubits_) + " qubits");
  }
}

void StateVector::apply_h(int qubit) {
  check_qubit(qubit);
  constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
  // std::complex<double> is layout-compatible with double[2]; working on the
  // interleaved reals lets the pair loop vectorize.
  double* d = reinterpret_cast<double*>(amplitudes_.data());
  const std::size_t stride = std::size_t{2} << qubit;
  const std::size_t n = 2 * amplitudes_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    double* lo = d + base;
    double* hi = d + base + stride;
    for (std::size_t k = 0; k < stride; ++k) {
      const double x = lo[k];
      const double y = hi[k];
      lo[k] = (x + y) * kInvSqrt2;
      hi[k] = (x - y) * kInvSqrt2;
    }
  }
}

void StateVector::apply_x(int qubit) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t n = amplitudes_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      std::swap(amplitudes_[i], amplitudes_[i + stride]);
    }
  }
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw ArgumentError("CNOT control and target must differ");
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  const std::size_t lo_stride = std::size_t{1} << std::min(control, target);
  const std::size_t hi_stride = std::size_t{1} << std::max(control, target);
  const std::size_t n = amplitudes_.size();
  Amplitude* amp = amplitudes_.data();
  // Walk every index with control and target clear, then swap its
  // control-set partner with the partner's target-flipped twin.
  for (std::size_t a = 0; a < n; a += 2 * hi_stride) {
    for (std::size_t b = a; b < a + hi_stride; b += 2 * lo_stride) {
      for (std::size_t i = b; i < b + lo_stride; ++i) {
        const std::size_t src = i | cmask;
        std::swap(amp[src], amp[src | tmask]);
      }
    }
  }
}

void StateVector::apply_dot_oracle(const BitString& key, std::span<const int> inputs, int output) {
  if (inputs.size() != static_cast<std::size_t>(key.width())) {
    throw ArgumentError("oracle key width " + std::to_string(key.width()) + " does not match " +
                        std::to_string(inputs.size()) + " input qubits");
  }
  check_qubit(output);
  std::uint64_t seen = 0;
  for (int q : inputs) {
    check_qubit(q);
    if (q == output) throw ArgumentError("oracle output qubit is also an input");
    if (seen & (std::uint64_t{1} << q)) throw ArgumentError("oracle input qubits overlap");
    seen |= std::uint64_t{1} << q;
  }
  for (int i = 0; i < key.width(); ++i) {
    if (key.bit(i)) apply_cnot(inputs[static_cast<std::size_t>(i)], output);
  }
}

BitString StateVector::measure(std::span<const int> qubits, Rng& rng) {
  check_subset(qubits, num_qubits_);
  const std::vector<double> probs = distribution(amplitudes_, qubits);

  const double draw = rng.uniform();
  std::uint32_t chosen = 0;
  std::uint32_t last_nonzero = 0;
  double cumulative = 0.0;
  bool found = false;
  for (std::uint32_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    last_nonzero = k;
    cumulative += probs[k];
    if (draw < cumulative) {
      chosen = k;
      found = true;
      break;
    }
  }
  // Rounding can leave the cumulative total a hair below 1.
  if (!found) chosen = last_nonzero;

  const double scale = 1.0 / std::sqrt(probs[chosen]);
  const std::size_t mask = qubit_mask(qubits);
  const std::size_t pattern = scatter(chosen, qubits);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & mask) == pattern) {
      amplitudes_[i] *= scale;
    } else {
      amplitudes_[i] = Amplitude{0.0, 0.0};
    }
  }
  return BitString(static_cast<int>(qubits.size()), chosen);
}

StateVector new_zero_state(int num_qubits) { return StateVector(num_qubits); }

MeasurementResult measure_subset(const StateVector& state, std::span<const int> qubits, Rng& rng) {
  StateVector post = state;
  BitString outcome = post.measure(qubits, rng);
  return MeasurementResult{outcome, std::move(post)};
}

std::vector<double> subset_distribution(const StateVector& state, std::span<const int> qubits) {
  check_subset(qubits, state.num_qubits());
  return distribution(state.amplitudes(), qubits);
}

std::map<BitString, double> probabilities_of_subset(const StateVector& state,
                                                    std::span<const int> qubits) {
  const std::vector<double> probs = subset_distribution(state, qubits);
  const int width = static_cast<int>(qubits.size());
  std::map<BitString, double> out;
  for (std::uint32_t k = 0; k < probs.size(); ++k) {
    if (probs[k] >= kNumericalZero) out.emplace(BitString(width, k), probs[k]);
  }
  return out;
}

}  // namespace sebv
