#pragma once

// Independent reference computations for tests. Nothing here calls the
// gate kernels it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace sebv::testing {

using Complex = std::complex<double>;

inline int parity_by_loop(std::uint32_t v) {
  int p = 0;
  while (v != 0) {
    p ^= static_cast<int>(v & 1u);
    v >>= 1;
  }
  return p;
}

/// Bitwise inner product, bit by bit.
inline int dot_mod2(std::uint32_t a, std::uint32_t b, int width) {
  int acc = 0;
  for (int i = 0; i < width; ++i) acc ^= static_cast<int>(((a >> i) & 1u) & ((b >> i) & 1u));
  return acc;
}

/// sum over x of (-1)^{(s xor z) . x}, by enumeration.
inline long long delta_sum(std::uint32_t s, std::uint32_t z, int n) {
  long long total = 0;
  for (std::uint32_t x = 0; x < (1u << n); ++x) total += dot_mod2(s ^ z, x, n) ? -1 : 1;
  return total;
}

/// Dense 2^m x 2^m permutation matrix of |x, y> -> |x, y xor key.x>, rows
/// and columns indexed by full basis index, applied by matrix-vector product.
inline std::vector<Complex> dense_oracle_apply(const std::vector<Complex>& in, int num_qubits,
                                              std::uint32_t key, const std::vector<int>& inputs,
                                              int output) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<std::vector<double>> u(dim, std::vector<double>(dim, 0.0));
  for (std::size_t col = 0; col < dim; ++col) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) x |= ((col >> inputs[i]) & 1u) << i;
    const std::size_t row = dot_mod2(key, x, static_cast<int>(inputs.size()))
                                ? (col ^ (std::size_t{1} << output))
                                : col;
    u[row][col] = 1.0;
  }
  std::vector<Complex> out(dim, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out[r] += u[r][c] * in[c];
  }
  return out;
}

inline std::vector<Complex> random_state(int num_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex{normal(gen), normal(gen)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return amps;
}

/// Joint input-register distribution of the two-party circuit evaluated from
/// the closed form: amplitude of |z>_A |w>_B is
/// 2^{-3n/2} sum_x (-1)^{(sA xor sB xor z xor w) . x}. Indexed z | (w << n).
inline std::vector<double> closed_form_joint_distribution(int n, std::uint32_t key_a,
                                                          std::uint32_t key_b) {
  const std::uint32_t size = 1u << n;
  const double scale = std::pow(2.0, -1.5 * n);
  std::vector<double> probs(std::size_t{1} << (2 * n), 0.0);
  for (std::uint32_t z = 0; z < size; ++z) {
    for (std::uint32_t w = 0; w < size; ++w) {
      long long sum = 0;
      for (std::uint32_t x = 0; x < size; ++x) {
        sum += dot_mod2(key_a ^ key_b ^ z ^ w, x, n) ? -1 : 1;
      }
      const double amp = scale * static_cast<double>(sum);
      probs[z | (w << n)] = amp * amp;
    }
  }
  return probs;
}

/// Half-width of the 4-sigma band for a frequency with probability p.
inline double four_sigma(double p, double samples) { return 4.0 * std::sqrt(p * (1 - p) / samples); }

}  // namespace sebv::testing
