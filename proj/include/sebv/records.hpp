#pragma once

#include <string>
#include <string_view>

#include "sebv/adversary.hpp"
#include "sebv/analysis.hpp"
#include "sebv/protocol.hpp"

namespace sebv {

// Line-delimited JSON records. Each function returns a single line without
// the trailing newline. Field order is fixed and every record starts with
// a "record" discriminator. Bit strings are MSB-first text.
//
// session:   record, rng, variant, n, key_a, key_b, seed, max_retries,
//            roles_reversed, initiator, attempts[{index, alice_measurement,
//            bob_measurement, messages[{sender, kind, payload}]}],
//            final_key_alice, final_key_bob, retries_used, status
// attack:    record, attack, variant, n, key_a, key_b, roles_reversed,
//            sessions, attempts, parity_violations, parity_violation_rate,
//            successful_sessions, eve_key_hits, eve_key_hit_rate,
//            alice_readout_counts, bob_readout_counts
// histogram: record, n, shots, counts{readout: count}

std::string to_record(const SessionTranscript& transcript);
/// Inverse of to_record for session lines. Throws ValidationError on
/// malformed input or an unknown RNG algorithm.
SessionTranscript transcript_from_record(std::string_view line);

std::string to_record(const AttackReport& report, const ProtocolConfig& config);
std::string to_record(const OutcomeHistogram& histogram);

}  // namespace sebv
