#include "sebv/protocol.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace sebv {
namespace {

/// One party's local view of an attempt. Actions must run in protocol order;
/// the party only ever touches its own two registers.
class PartyMachine {
 public:
  enum class Stage { HoldingPairs, OutputInMinus, KeyApplied, InputTransformed, Measured };

  PartyMachine(Party who, BitString key, std::vector<int> input, int output)
      : who_(who), key_(key), input_(std::move(input)), output_(output) {}

  void hadamard_output(StateVector& state) {
    advance(Stage::HoldingPairs, Stage::OutputInMinus);
    state.apply_h(output_);
  }

  void apply_key(StateVector& state) {
    advance(Stage::OutputInMinus, Stage::KeyApplied);
    state.apply_dot_oracle(key_, input_, output_);
  }

  void hadamard_input(StateVector& state) {
    advance(Stage::KeyApplied, Stage::InputTransformed);
    for (int q : input_) state.apply_h(q);
  }

  const BitString& measure(StateVector& state, Rng& rng) {
    advance(Stage::InputTransformed, Stage::Measured);
    measurement_ = state.measure(input_, rng);
    return *measurement_;
  }

  Party who() const { return who_; }
  const BitString& key() const { return key_; }
  const BitString& measurement() const {
    if (!measurement_) throw std::logic_error("party has not measured yet");
    return *measurement_;
  }

 private:
  void advance(Stage expected, Stage next) {
    if (stage_ != expected) {
      throw std::logic_error(std::string(to_string(who_)) + " acted out of protocol order");
    }
    stage_ = next;
  }

  Party who_;
  BitString key_;
  std::vector<int> input_;
  int output_;
  Stage stage_ = Stage::HoldingPairs;
  std::optional<BitString> measurement_;
};

Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

struct QuantumOutcome {
  PartyMachine alice;
  PartyMachine bob;
};

QuantumOutcome run_quantum_phase(const ProtocolConfig& config, int attempt_index,
                                 const SessionHooks& hooks) {
  const RegisterLayout layout = RegisterLayout::for_key_width(config.n);
  Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(attempt_index)));

  StateVector state = prepare_bell_pairs(config.n);
  if (hooks.on_distribution) hooks.on_distribution(state, layout);

  PartyMachine alice(Party::Alice, config.key_a, layout.alice_input, layout.alice_output);
  PartyMachine bob(Party::Bob, config.key_b, layout.bob_input, layout.bob_output);

  alice.hadamard_output(state);
  bob.hadamard_output(state);
  alice.apply_key(state);
  bob.apply_key(state);
  alice.hadamard_input(state);
  bob.hadamard_input(state);
  if (hooks.on_pre_measurement) hooks.on_pre_measurement(state);

  alice.measure(state, rng);
  bob.measure(state, rng);
  return QuantumOutcome{std::move(alice), std::move(bob)};
}

void publish(Attempt& attempt, const SessionHooks& hooks, PublicMessage message) {
  if (hooks.on_public_message) hooks.on_public_message(message);
  attempt.messages.push_back(std::move(message));
}

void store_keys(SessionTranscript& t, Party party, const BitString& key) {
  (party == Party::Alice ? t.final_key_alice : t.final_key_bob) = key;
}

}  // namespace

std::string_view to_string(Variant v) {
  return v == Variant::FullySymmetric ? "fsebv" : "ssebv";
}

std::string_view to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }

std::string_view to_string(PartyRole r) {
  return r == PartyRole::Initiator ? "initiator" : "responder";
}

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::RetryRequest:
      return "retry_request";
    case MessageKind::KeyAnnouncement:
      return "key_announcement";
    case MessageKind::MeasurementAnnouncement:
      return "measurement_announcement";
  }
  return "unknown";
}

std::string_view to_string(SessionStatus s) {
  return s == SessionStatus::Agreed ? "agreed" : "retry_limit";
}

Variant parse_variant(std::string_view text) {
  if (text == "fsebv") return Variant::FullySymmetric;
  if (text == "ssebv") return Variant::SemiSymmetric;
  throw ValidationError("unknown protocol '" + std::string(text) + "'");
}

Party parse_party(std::string_view text) {
  if (text == "alice") return Party::Alice;
  if (text == "bob") return Party::Bob;
  throw ValidationError("unknown party '" + std::string(text) + "'");
}

MessageKind parse_message_kind(std::string_view text) {
  for (MessageKind k : {MessageKind::RetryRequest, MessageKind::KeyAnnouncement,
                        MessageKind::MeasurementAnnouncement}) {
    if (text == to_string(k)) return k;
  }
  throw ValidationError("unknown message kind '" + std::string(text) + "'");
}

void ProtocolConfig::validate() const {
  if (n < 1 || n > kMaxKeyWidth) {
    throw ValidationError("key width n=" + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxKeyWidth) + "]");
  }
  if (key_a.width() != n || key_b.width() != n) {
    throw ValidationError("key widths (" + std::to_string(key_a.width()) + ", " +
                          std::to_string(key_b.width()) + ") do not match n=" +
                          std::to_string(n));
  }
  if (max_retries < 0) throw ValidationError("max_retries must be non-negative");
  if (variant == Variant::SemiSymmetric) {
    const bool alice_chooses = !roles_reversed;
    const BitString& chosen = alice_chooses ? key_a : key_b;
    const BitString& forced = alice_chooses ? key_b : key_a;
    if (!forced.is_zero()) {
      throw ValidationError(std::string("semi-symmetric protocol requires ") +
                            (alice_chooses ? "Bob" : "Alice") + " to use the all-zero key");
    }
    if (chosen.is_zero()) throw ValidationError("the chosen key must not be all-zero");
  }
}

Party initiator(const ProtocolConfig& config) {
  // Fully symmetric: Bob's measurement is the key unless reversed.
  // Semi-symmetric: Alice chooses the key unless reversed.
  if (config.variant == Variant::FullySymmetric) {
    return config.roles_reversed ? Party::Alice : Party::Bob;
  }
  return config.roles_reversed ? Party::Bob : Party::Alice;
}

PartyRole role_of(const ProtocolConfig& config, Party party) {
  return initiator(config) == party ? PartyRole::Initiator : PartyRole::Responder;
}

ProtocolConfig reverse_roles(const ProtocolConfig& config) {
  ProtocolConfig out = config;
  out.roles_reversed = !config.roles_reversed;
  if (config.variant == Variant::SemiSymmetric) std::swap(out.key_a, out.key_b);
  return out;
}

std::vector<PublicMessage> SessionTranscript::public_messages() const {
  std::vector<PublicMessage> out;
  for (const Attempt& a : attempts) out.insert(out.end(), a.messages.begin(), a.messages.end());
  return out;
}

RetryLimitError::RetryLimitError(SessionTranscript transcript)
    : Error("no acceptable key after " + std::to_string(transcript.attempts.size()) +
            " attempts"),
      transcript_(std::move(transcript)) {}

BitString derive_key(const BitString& own_key, const BitString& own_measurement,
                     const BitString& announced) {
  return own_key ^ own_measurement ^ announced;
}

Attempt run_attempt(const ProtocolConfig& config, int attempt_index, const SessionHooks& hooks) {
  QuantumOutcome q = run_quantum_phase(config, attempt_index, hooks);
  return Attempt{q.alice.measurement(), q.bob.measurement(), {}};
}

SessionTranscript run_session(const ProtocolConfig& config, const SessionHooks& hooks) {
  config.validate();
  SessionTranscript t;
  t.config = config;

  const Party lead = initiator(config);
  const Party follower = other(lead);

  for (int attempt_index = 0; attempt_index <= config.max_retries; ++attempt_index) {
    QuantumOutcome q = run_quantum_phase(config, attempt_index, hooks);
    const PartyMachine& lead_party = lead == Party::Alice ? q.alice : q.bob;
    const PartyMachine& follow_party = lead == Party::Alice ? q.bob : q.alice;

    Attempt attempt{q.alice.measurement(), q.bob.measurement(), {}};

    if (config.variant == Variant::FullySymmetric) {
      const BitString& key = lead_party.measurement();
      if (key.is_zero()) {
        publish(attempt, hooks, {lead, MessageKind::RetryRequest, std::nullopt});
        t.attempts.push_back(std::move(attempt));
        continue;
      }
      publish(attempt, hooks, {lead, MessageKind::KeyAnnouncement, lead_party.key()});
      store_keys(t, lead, key);
      store_keys(t, follower,
                 derive_key(follow_party.key(), follow_party.measurement(), lead_party.key()));
    } else {
      publish(attempt, hooks,
              {lead, MessageKind::MeasurementAnnouncement, lead_party.measurement()});
      store_keys(t, lead, lead_party.key());
      store_keys(t, follower,
                 derive_key(follow_party.key(), follow_party.measurement(),
                            lead_party.measurement()));
    }
    t.attempts.push_back(std::move(attempt));
    t.retries_used = attempt_index;
    t.status = SessionStatus::Agreed;
    return t;
  }

  t.retries_used = config.max_retries;
  t.status = SessionStatus::RetryLimit;
  return t;
}

SessionTranscript run_fsebv(const ProtocolConfig& config, const SessionHooks& hooks) {
  if (config.variant != Variant::FullySymmetric) {
    throw ValidationError("run_fsebv requires the fully symmetric variant");
  }
  SessionTranscript t = run_session(config, hooks);
  if (!t.succeeded()) throw RetryLimitError(std::move(t));
  return t;
}

SessionTranscript run_ssebv(const ProtocolConfig& config, const SessionHooks& hooks) {
  if (config.variant != Variant::SemiSymmetric) {
    throw ValidationError("run_ssebv requires the semi-symmetric variant");
  }
  return run_session(config, hooks);
}

}  // namespace sebv
