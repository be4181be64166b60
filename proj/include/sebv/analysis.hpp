#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>

#include "sebv/bitstring.hpp"
#include "sebv/protocol.hpp"
#include "sebv/rng.hpp"

namespace sebv {

/// Histograms label readouts with 2n bits, so n is capped here.
inline constexpr int kMaxHistogramKeyWidth = BitString::kMaxWidth / 2;
inline constexpr double kUniformitySignificance = 0.001;

/// Joint readout rendered Bob's input register then Alice's, each MSB-first
/// (q_{2n} .. q_{n+1} q_{n-1} .. q_0).
BitString joint_readout(const BitString& alice, const BitString& bob);

struct OutcomeHistogram {
  int n = 0;
  std::uint64_t shots = 0;
  std::map<BitString, std::uint64_t> counts;
};

/// `shots` independent single-attempt executions of the two-party circuit;
/// shot seeds are drawn from `rng` in order. No retry logic.
OutcomeHistogram collect_histogram(const ProtocolConfig& config, std::uint64_t shots, Rng& rng);

/// The 2^n joint readouts whose Bob part equals key_a ^ key_b ^ Alice part.
std::set<BitString> expected_support(int n, const BitString& key_a, const BitString& key_b);

struct UniformityCheck {
  std::set<BitString> expected_support;
  bool support_matches = false;
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double critical_value = 0.0;
  bool passed = false;
};

/// Upper-tail critical value of the chi-square distribution.
double chi_square_critical_value(std::size_t degrees_of_freedom,
                                 double significance = kUniformitySignificance);

/// Pearson statistic of `counts` against equal expected counts.
double chi_square_uniform(std::span<const std::uint64_t> counts);

/// Passes iff the observed support equals `expected` and the chi-square
/// statistic over `expected` is below the critical value at 0.001.
UniformityCheck check_uniformity(const OutcomeHistogram& histogram,
                                 const std::set<BitString>& expected);

/// Same test over a dense tally in which every cell is expected.
UniformityCheck check_uniform_counts(std::span<const std::uint64_t> counts, int width);

/// "readout,count,frequency" header plus one row per readout, ascending.
std::string histogram_to_csv(const OutcomeHistogram& histogram);

}  // namespace sebv
