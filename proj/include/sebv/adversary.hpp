#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sebv/bitstring.hpp"
#include "sebv/protocol.hpp"
#include "sebv/rng.hpp"

namespace sebv {

/// What a listener on the public channel holds after one session.
struct EveObservation {
  std::vector<PublicMessage> overheard;
  /// Number of distinct final keys consistent with the overheard values.
  std::uint64_t candidate_key_count = 0;
};

/// Every final key consistent with the public messages of `transcript`,
/// found by enumerating the values Eve cannot see. Empty when the session
/// ended without a key. Sorted ascending.
std::vector<BitString> passive_candidate_keys(const SessionTranscript& transcript);

EveObservation passive_eve(const SessionTranscript& transcript);

enum class AttackKind { Passive, InterceptResend };
std::string_view to_string(AttackKind k);
AttackKind parse_attack_kind(std::string_view text);

struct AttackReport {
  AttackKind attack_kind = AttackKind::Passive;
  Variant variant = Variant::FullySymmetric;
  int n = 0;
  std::uint64_t sessions = 0;
  /// Quantum attempts across all sessions, retries included.
  std::uint64_t attempts = 0;
  std::uint64_t parity_violations = 0;
  /// parity_violations / attempts.
  double parity_violation_rate = 0.0;
  std::uint64_t successful_sessions = 0;
  std::uint64_t eve_key_hits = 0;
  /// eve_key_hits / successful_sessions.
  double eve_key_hit_rate = 0.0;
  /// Per-attempt readout tallies indexed by readout value, 2^n entries each.
  std::vector<std::uint64_t> alice_readout_counts;
  std::vector<std::uint64_t> bob_readout_counts;
};

/// Runs `sessions` protocol sessions of `config` (keys fixed, per-session
/// seeds drawn from `rng`) with Eve attacking each one. Passive Eve only
/// reads the public channel. Intercept-resend Eve measures both halves of
/// every pair in the computational basis while in transit and forwards the
/// collapsed qubits. In both cases Eve guesses the key uniformly from her
/// candidate set.
AttackReport run_attack(AttackKind kind, const ProtocolConfig& config, std::uint64_t sessions,
                        Rng& rng);

AttackReport passive_attack(const ProtocolConfig& config, std::uint64_t sessions, Rng& rng);
AttackReport intercept_resend_eve(const ProtocolConfig& config, std::uint64_t sessions, Rng& rng);

}  // namespace sebv
