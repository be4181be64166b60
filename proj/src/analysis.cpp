#include "sebv/analysis.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "sebv/errors.hpp"

namespace sebv {

BitString joint_readout(const BitString& alice, const BitString& bob) { return concat(bob, alice); }

OutcomeHistogram collect_histogram(const ProtocolConfig& config, std::uint64_t shots, Rng& rng) {
  config.validate();
  if (config.n > kMaxHistogramKeyWidth) {
    throw ValidationError("histograms support n <= " + std::to_string(kMaxHistogramKeyWidth));
  }
  if (shots == 0) throw ValidationError("histogram needs at least one shot");

  OutcomeHistogram h;
  h.n = config.n;
  h.shots = shots;
  ProtocolConfig shot_config = config;
  for (std::uint64_t s = 0; s < shots; ++s) {
    shot_config.seed = rng.next_u64();
    const Attempt a = run_attempt(shot_config, 0);
    ++h.counts[joint_readout(a.alice_measurement, a.bob_measurement)];
  }
  return h;
}

std::set<BitString> expected_support(int n, const BitString& key_a, const BitString& key_b) {
  if (n < 1 || n > kMaxHistogramKeyWidth) {
    throw ValidationError("expected support needs 1 <= n <= " +
                          std::to_string(kMaxHistogramKeyWidth));
  }
  if (key_a.width() != n || key_b.width() != n) {
    throw ValidationError("key widths do not match n=" + std::to_string(n));
  }
  const BitString parity = key_a ^ key_b;
  std::set<BitString> out;
  for (std::uint32_t z = 0; z < (std::uint32_t{1} << n); ++z) {
    const BitString alice(n, z);
    out.insert(joint_readout(alice, parity ^ alice));
  }
  return out;
}

double chi_square_critical_value(std::size_t degrees_of_freedom, double significance) {
  if (degrees_of_freedom == 0) throw ArgumentError("chi-square needs at least one degree of freedom");
  const boost::math::chi_squared_distribution<double> dist(
      static_cast<double>(degrees_of_freedom));
  return boost::math::quantile(boost::math::complement(dist, significance));
}

double chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw ArgumentError("chi-square over an empty tally");
  double total = 0.0;
  for (std::uint64_t c : counts) total += static_cast<double>(c);
  if (total == 0.0) throw ArgumentError("chi-square over a tally with no observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

UniformityCheck check_uniformity(const OutcomeHistogram& histogram,
                                 const std::set<BitString>& expected) {
  if (expected.size() < 2) throw ArgumentError("uniformity check needs at least two readouts");
  UniformityCheck check;
  check.expected_support = expected;

  check.support_matches = histogram.counts.size() == expected.size();
  for (const auto& [readout, count] : histogram.counts) {
    if (count == 0 || !expected.contains(readout)) check.support_matches = false;
  }

  std::vector<std::uint64_t> cells;
  cells.reserve(expected.size());
  for (const BitString& r : expected) {
    auto it = histogram.counts.find(r);
    cells.push_back(it == histogram.counts.end() ? 0 : it->second);
  }
  std::uint64_t in_support = 0;
  for (std::uint64_t c : cells) in_support += c;

  check.degrees_of_freedom = expected.size() - 1;
  check.critical_value = chi_square_critical_value(check.degrees_of_freedom);
  if (in_support > 0) check.chi_square = chi_square_uniform(cells);
  check.passed = check.support_matches && in_support > 0 &&
                 check.chi_square < check.critical_value;
  return check;
}

UniformityCheck check_uniform_counts(std::span<const std::uint64_t> counts, int width) {
  if (counts.size() != (std::size_t{1} << width)) {
    throw ArgumentError("tally size does not match width");
  }
  OutcomeHistogram h;
  h.n = width;
  std::set<BitString> support;
  for (std::uint32_t k = 0; k < counts.size(); ++k) {
    const BitString r(width, k);
    support.insert(r);
    h.shots += counts[k];
    if (counts[k] > 0) h.counts.emplace(r, counts[k]);
  }
  return check_uniformity(h, support);
}

std::string histogram_to_csv(const OutcomeHistogram& histogram) {
  std::string out = "readout,count,frequency\n";
  char buf[64];
  for (const auto& [readout, count] : histogram.counts) {
    const double freq = static_cast<double>(count) / static_cast<double>(histogram.shots);
    std::snprintf(buf, sizeof buf, ",%llu,%.6f\n", static_cast<unsigned long long>(count), freq);
    out += readout.to_string();
    out += buf;
  }
  return out;
}

}  // namespace sebv
