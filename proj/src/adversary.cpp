#include "sebv/adversary.hpp"

#include <string>

#include "sebv/errors.hpp"

namespace sebv {
namespace {

const PublicMessage* find_message(const Attempt& attempt, MessageKind kind) {
  for (const PublicMessage& m : attempt.messages) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

}  // namespace

std::vector<BitString> passive_candidate_keys(const SessionTranscript& transcript) {
  if (!transcript.succeeded() || transcript.attempts.empty()) return {};
  const int n = transcript.config.n;
  const std::uint32_t space = std::uint32_t{1} << n;
  std::vector<bool> reachable(space, false);
  const Attempt& last = transcript.attempts.back();

  if (transcript.config.variant == Variant::FullySymmetric) {
    // key = responder key ^ responder measurement ^ announced initiator key;
    // Eve sees only the last term.
    const PublicMessage* m = find_message(last, MessageKind::KeyAnnouncement);
    if (m == nullptr || !m->payload) return {};
    const std::uint32_t announced = m->payload->value();
    for (std::uint32_t hidden_key = 0; hidden_key < space; ++hidden_key) {
      for (std::uint32_t hidden_measurement = 0; hidden_measurement < space; ++hidden_measurement) {
        reachable[hidden_key ^ hidden_measurement ^ announced] = true;
      }
    }
  } else {
    // key = chosen key; the announced measurement is independent of it.
    const PublicMessage* m = find_message(last, MessageKind::MeasurementAnnouncement);
    if (m == nullptr || !m->payload) return {};
    for (std::uint32_t hidden_key = 0; hidden_key < space; ++hidden_key) {
      reachable[hidden_key] = true;
    }
  }

  std::vector<BitString> out;
  for (std::uint32_t k = 0; k < space; ++k) {
    if (reachable[k]) out.emplace_back(n, k);
  }
  return out;
}

EveObservation passive_eve(const SessionTranscript& transcript) {
  EveObservation obs;
  obs.overheard = transcript.public_messages();
  obs.candidate_key_count = passive_candidate_keys(transcript).size();
  return obs;
}

std::string_view to_string(AttackKind k) {
  return k == AttackKind::Passive ? "passive" : "intercept-resend";
}

AttackKind parse_attack_kind(std::string_view text) {
  if (text == "passive") return AttackKind::Passive;
  if (text == "intercept-resend") return AttackKind::InterceptResend;
  throw ValidationError("unknown attack '" + std::string(text) + "'");
}

AttackReport run_attack(AttackKind kind, const ProtocolConfig& config, std::uint64_t sessions,
                        Rng& rng) {
  config.validate();
  if (sessions == 0) throw ValidationError("attack needs at least one session");

  AttackReport report;
  report.attack_kind = kind;
  report.variant = config.variant;
  report.n = config.n;
  report.sessions = sessions;
  report.alice_readout_counts.assign(std::size_t{1} << config.n, 0);
  report.bob_readout_counts.assign(std::size_t{1} << config.n, 0);

  const BitString parity = config.key_a ^ config.key_b;

  for (std::uint64_t s = 0; s < sessions; ++s) {
    ProtocolConfig session_config = config;
    session_config.seed = rng.next_u64();
    Rng eve_rng(rng.next_u64());

    SessionHooks hooks;
    if (kind == AttackKind::InterceptResend) {
      hooks.on_distribution = [&eve_rng](StateVector& state, const RegisterLayout& layout) {
        state.measure(layout.bob_input, eve_rng);
        state.measure(layout.alice_input, eve_rng);
      };
    }

    const SessionTranscript t = run_session(session_config, hooks);
    for (const Attempt& a : t.attempts) {
      ++report.attempts;
      if ((a.alice_measurement ^ a.bob_measurement) != parity) ++report.parity_violations;
      ++report.alice_readout_counts[a.alice_measurement.value()];
      ++report.bob_readout_counts[a.bob_measurement.value()];
    }
    if (!t.succeeded()) continue;
    ++report.successful_sessions;
    const std::vector<BitString> candidates = passive_candidate_keys(t);
    if (candidates.empty()) continue;
    const BitString& guess = candidates[eve_rng.below(candidates.size())];
    if (guess == *t.final_key_bob) ++report.eve_key_hits;
  }

  report.parity_violation_rate =
      static_cast<double>(report.parity_violations) / static_cast<double>(report.attempts);
  report.eve_key_hit_rate =
      report.successful_sessions == 0
          ? 0.0
          : static_cast<double>(report.eve_key_hits) /
                static_cast<double>(report.successful_sessions);
  return report;
}

AttackReport passive_attack(const ProtocolConfig& config, std::uint64_t sessions, Rng& rng) {
  return run_attack(AttackKind::Passive, config, sessions, rng);
}

AttackReport intercept_resend_eve(const ProtocolConfig& config, std::uint64_t sessions,
                                  Rng& rng) {
  return run_attack(AttackKind::InterceptResend, config, sessions, rng);
}

}  // namespace sebv
