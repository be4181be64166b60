// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sebv/adversary.hpp"
#include "sebv/analysis.hpp"
#include "sebv/circuits.hpp"
#include "sebv/cli.hpp"
#include "sebv/protocol.hpp"
#include "sebv/state_vector.hpp"
#include "support.hpp"

namespace {

using namespace sebv;

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && passed) {
      passed = false;
      detail = why;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 means no limit
  std::function<Verdict()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

BitString random_key(int n, Rng& rng, bool nonzero) {
  const std::uint32_t lo = nonzero ? 1 : 0;
  const std::uint32_t span = (1u << n) - lo;
  BitString k = BitString::zeros(n);
  const std::uint32_t v = lo + static_cast<std::uint32_t>(rng.below(span));
  for (int i = 0; i < n; ++i) {
    if ((v >> i) & 1u) k ^= BitString::one_hot(n, i);
  }
  return k;
}

Verdict bv_determinism() {
  Verdict v;
  Rng rng(1);
  int keys = 0;
  for (int n = 1; n <= 8; ++n) {
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      BitString key = BitString::zeros(n);
      for (int i = 0; i < n; ++i) {
        if ((s >> i) & 1u) key ^= BitString::one_hot(n, i);
      }
      ++keys;
      v.require(run_bv(key, rng) == key, "run_bv missed " + key.to_string());
      if (n <= 4) {
        const CircuitDescription c = build_bv_circuit(key);
        const double p = subset_distribution(simulate(c), c.measured)[key.value()];
        v.require(std::abs(p - 1.0) < 1e-10, "P(s) for " + key.to_string() + " = " + fmt("%.17g", p));
      }
    }
  }
  if (v.passed) v.detail = std::to_string(keys) + " keys recovered";
  return v;
}

Verdict figure(const char* key_a, const char* key_b, std::uint32_t parity, std::uint64_t seed) {
  Verdict v;
  ProtocolConfig c;
  c.variant = BitString::parse(key_b).is_zero() ? Variant::SemiSymmetric : Variant::FullySymmetric;
  c.key_a = BitString::parse(key_a);
  c.key_b = BitString::parse(key_b);
  c.n = 3;
  Rng rng(seed);
  const OutcomeHistogram h = collect_histogram(c, 2048, rng);
  v.require(h.counts.size() == 8, std::to_string(h.counts.size()) + " distinct readouts");
  double worst = 0.0;
  for (const auto& [r, count] : h.counts) {
    const std::uint32_t alice = r.value() & 7u;
    const std::uint32_t bob = r.value() >> 3;
    v.require((alice ^ bob) == parity, "readout " + r.to_string() + " off parity");
    const double dev = std::abs(static_cast<double>(count) / 2048.0 - 0.125);
    worst = std::max(worst, dev);
    v.require(dev <= 0.04, "frequency of " + r.to_string() + " off by " + fmt("%.4f", dev));
  }
  const UniformityCheck u = check_uniformity(h, expected_support(3, c.key_a, c.key_b));
  v.require(u.passed, "chi-square " + fmt("%.3f", u.chi_square) + " vs " + fmt("%.3f", u.critical_value));
  if (v.passed) {
    v.detail = "8 readouts, max |f-0.125| = " + fmt("%.4f", worst) + ", chi2 = " +
               fmt("%.3f", u.chi_square) + " < " + fmt("%.3f", u.critical_value);
  }
  return v;
}

Verdict key_agreement() {
  Verdict v;
  Rng rng(4);
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  for (Variant variant : {Variant::FullySymmetric, Variant::SemiSymmetric}) {
    for (int i = 0; i < 10000; ++i) {
      ProtocolConfig c;
      c.variant = variant;
      c.n = 2 + static_cast<int>(rng.below(7));
      c.seed = rng.next_u64();
      c.roles_reversed = (i % 2) == 1;
      if (variant == Variant::FullySymmetric) {
        c.key_a = random_key(c.n, rng, false);
        c.key_b = random_key(c.n, rng, false);
      } else if (c.roles_reversed) {
        c.key_a = BitString::zeros(c.n);
        c.key_b = random_key(c.n, rng, true);
      } else {
        c.key_a = random_key(c.n, rng, true);
        c.key_b = BitString::zeros(c.n);
      }
      const SessionTranscript t = run_session(c);
      if (!t.succeeded()) {
        ++failures;
        continue;
      }
      ++successes;
      v.require(*t.final_key_alice == *t.final_key_bob,
                "disagreement at seed " + std::to_string(c.seed));
      v.require(!t.final_key_alice->is_zero(), "all-zero key at seed " + std::to_string(c.seed));
    }
  }
  if (v.passed) {
    v.detail = std::to_string(successes) + " sessions agreed, " + std::to_string(failures) +
               " hit the retry limit";
  }
  return v;
}

Verdict retry_rate() {
  Verdict v;
  Rng rng(5);
  std::uint64_t retried = 0;
  const int sessions = 10000;
  for (int i = 0; i < sessions; ++i) {
    ProtocolConfig c;
    c.n = 3;
    c.key_a = random_key(3, rng, false);
    c.key_b = random_key(3, rng, false);
    c.seed = rng.next_u64();
    if (run_session(c).retries_used > 0) ++retried;
  }
  const double freq = static_cast<double>(retried) / sessions;
  v.require(std::abs(freq - 0.125) <= 0.013, "retry frequency " + fmt("%.4f", freq));
  if (v.passed) v.detail = "retry frequency " + fmt("%.4f", freq);
  return v;
}

Verdict delta_identity() {
  Verdict v;
  long long pairs = 0;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      for (std::uint32_t z = 0; z < (1u << n); ++z) {
        long long sum = 0;
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
          BitString sb = BitString::zeros(n), zb = BitString::zeros(n), xb = BitString::zeros(n);
          for (int i = 0; i < n; ++i) {
            if ((s >> i) & 1u) sb ^= BitString::one_hot(n, i);
            if ((z >> i) & 1u) zb ^= BitString::one_hot(n, i);
            if ((x >> i) & 1u) xb ^= BitString::one_hot(n, i);
          }
          sum += (sb.dot(xb) ^ zb.dot(xb)) ? -1 : 1;
        }
        const long long expected = (s == z) ? (1LL << n) : 0;
        v.require(sum == expected, "n=" + std::to_string(n) + " s=" + std::to_string(s) +
                                       " z=" + std::to_string(z));
        v.require(sum == testing::delta_sum(s, z, n), "disagrees with reference enumeration");
        ++pairs;
      }
    }
  }
  if (v.passed) v.detail = std::to_string(pairs) + " (s, z) pairs";
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 gen(7);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const int m = n + 1;
    std::vector<int> inputs(n);
    for (int i = 0; i < n; ++i) inputs[i] = i;
    for (std::uint32_t key = 0; key < (1u << n); ++key) {
      BitString kb = BitString::zeros(n);
      for (int i = 0; i < n; ++i) {
        if ((key >> i) & 1u) kb ^= BitString::one_hot(n, i);
      }
      for (int trial = 0; trial < 4; ++trial) {
        const std::vector<testing::Complex> in = testing::random_state(m, gen);
        StateVector s = StateVector::from_amplitudes(in);
        s.apply_dot_oracle(kb, inputs, n);
        const auto expected = testing::dense_oracle_apply(in, m, key, inputs, n);
        for (std::size_t i = 0; i < expected.size(); ++i) {
          worst = std::max(worst, std::abs(s[i] - expected[i]));
        }
      }
    }
  }
  v.require(worst < 1e-12, "max amplitude error " + fmt("%.3g", worst));
  if (v.passed) v.detail = "max amplitude error " + fmt("%.3g", worst);
  return v;
}

Verdict eve_keyspace() {
  Verdict v;
  Rng rng(8);
  int sessions = 0;
  for (Variant variant : {Variant::FullySymmetric, Variant::SemiSymmetric}) {
    for (std::uint32_t a = 0; a < 4; ++a) {
      for (std::uint32_t b = 0; b < 4; ++b) {
        if (variant == Variant::SemiSymmetric && (a == 0 || b != 0)) continue;
        for (int seed = 0; seed < 8; ++seed) {
          ProtocolConfig c;
          c.variant = variant;
          c.n = 2;
          c.key_a = BitString::parse(std::string{char('0' + ((a >> 1) & 1)), char('0' + (a & 1))});
          c.key_b = BitString::parse(std::string{char('0' + ((b >> 1) & 1)), char('0' + (b & 1))});
          c.seed = static_cast<std::uint64_t>(seed);
          const SessionTranscript t = run_session(c);
          if (!t.succeeded()) continue;
          const auto candidates = passive_candidate_keys(t);
          v.require(candidates.size() == 4, "candidate set of size " + std::to_string(candidates.size()));
          v.require(std::find(candidates.begin(), candidates.end(), *t.final_key_alice) != candidates.end(),
                    "true key missing from candidates");
          ++sessions;
        }
      }
    }
  }
  for (int n = 1; n <= 8; ++n) {
    for (Variant variant : {Variant::FullySymmetric, Variant::SemiSymmetric}) {
      ProtocolConfig c;
      c.variant = variant;
      c.n = n;
      c.key_a = random_key(n, rng, true);
      c.key_b = variant == Variant::FullySymmetric ? random_key(n, rng, false) : BitString::zeros(n);
      c.seed = rng.next_u64();
      const EveObservation eve = passive_eve(run_session(c));
      v.require(eve.candidate_key_count == (1u << n),
                "n=" + std::to_string(n) + " count " + std::to_string(eve.candidate_key_count));
    }
  }
  if (v.passed) v.detail = std::to_string(sessions) + " exhaustive n=2 sessions, counts 2^n for n<=8";
  return v;
}

Verdict intercept_resend() {
  Verdict v;
  ProtocolConfig c;
  c.n = 3;
  c.key_a = BitString::parse("101");
  c.key_b = BitString::parse("110");
  Rng rng(9);
  const AttackReport r = intercept_resend_eve(c, 10000, rng);
  v.require(std::abs(r.parity_violation_rate - 0.875) <= 0.013,
            "violation rate " + fmt("%.4f", r.parity_violation_rate));
  const UniformityCheck ua = check_uniform_counts(r.alice_readout_counts, 3);
  const UniformityCheck ub = check_uniform_counts(r.bob_readout_counts, 3);
  v.require(ua.passed, "Alice marginal chi2 " + fmt("%.3f", ua.chi_square));
  v.require(ub.passed, "Bob marginal chi2 " + fmt("%.3f", ub.chi_square));
  if (v.passed) {
    v.detail = "violation rate " + fmt("%.4f", r.parity_violation_rate) + ", marginal chi2 " +
               fmt("%.2f", ua.chi_square) + "/" + fmt("%.2f", ub.chi_square) + " < " +
               fmt("%.2f", ua.critical_value);
  }
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict cli_reproducibility() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "sebv_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"run", "--protocol", "fsebv", "--n", "5", "--key-a", "10110", "--key-b", "01101", "--seed", "10"},
      {"run", "--protocol", "ssebv", "--n", "5", "--key-a", "10110", "--seed", "10"},
      {"histogram", "--n", "3", "--key-a", "101", "--key-b", "110", "--seed", "10", "--shots", "2048"},
      {"histogram", "--n", "3", "--key-a", "101", "--seed", "10", "--format", "jsonl"},
      {"attack", "--attack", "passive", "--n", "3", "--key-a", "101", "--key-b", "110", "--seed", "10",
       "--sessions", "500"},
      {"attack", "--attack", "intercept-resend", "--n", "3", "--key-a", "101", "--key-b", "110",
       "--seed", "10", "--sessions", "500"},
      {"export-qasm", "--n", "3", "--key-a", "101", "--key-b", "110"},
      {"bv", "--n", "6", "--key-a", "110101", "--seed", "10"},
  };
  int index = 0;
  for (const auto& base : commands) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / (std::to_string(index) + "_" + std::to_string(rep) + ".out");
      std::vector<std::string> args = base;
      args.insert(args.begin(), "sebv");
      args.insert(args.end(), {"--output", path.string()});
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      v.require(code == cli::kSuccess, base[0] + " exited " + std::to_string(code) + ": " + err.str());
      outputs[rep] = slurp(path);
    }
    v.require(!outputs[0].empty(), base[0] + " wrote nothing");
    v.require(outputs[0] == outputs[1], base[0] + " output differs between runs");
    ++index;
  }
  std::filesystem::remove_all(dir);
  if (v.passed) v.detail = std::to_string(index) + " invocations byte-identical";
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bv-determinism", 5.0, bv_determinism},
      {2, "fsebv-histogram", 1.0, [] { return figure("101", "110", 0b011, 6); }},
      {3, "ssebv-histogram", 1.0, [] { return figure("101", "000", 0b101, 8); }},
      {4, "key-agreement", 60.0, key_agreement},
      {5, "zero-key-retry-rate", 0.0, retry_rate},
      {6, "delta-identity", 1.0, delta_identity},
      {7, "oracle-equivalence", 0.0, oracle_equivalence},
      {8, "eve-keyspace", 0.0, eve_keyspace},
      {9, "intercept-resend-detection", 0.0, intercept_resend},
      {10, "cli-reproducibility", 0.0, cli_reproducibility},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s && v.passed) {
      v.passed = false;
      v.detail = "took " + fmt("%.2f", secs) + " s, limit " + fmt("%.0f", c.time_limit_s) + " s";
    }
    if (!v.passed) ++failed;
    std::printf("%s %2d %-28s %7.3fs  %s\n", v.passed ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
