#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sebv/bitstring.hpp"
#include "sebv/circuits.hpp"
#include "sebv/errors.hpp"
#include "sebv/state_vector.hpp"

namespace sebv {

enum class Variant { FullySymmetric, SemiSymmetric };
enum class Party { Alice, Bob };
/// The initiator is the party whose quantities fix the key: in the fully
/// symmetric variant its measurement is the key and it announces its own
/// tentative key; in the semi-symmetric variant it chose the key and
/// announces its measurement. The responder derives the key.
enum class PartyRole { Initiator, Responder };

std::string_view to_string(Variant v);
std::string_view to_string(Party p);
std::string_view to_string(PartyRole r);
Variant parse_variant(std::string_view text);
Party parse_party(std::string_view text);

inline constexpr int kDefaultMaxRetries = 64;

struct ProtocolConfig {
  Variant variant = Variant::FullySymmetric;
  int n = 0;
  BitString key_a;
  BitString key_b;
  std::uint64_t seed = 0;
  int max_retries = kDefaultMaxRetries;
  bool roles_reversed = false;

  /// Throws ValidationError when the configuration cannot be run: widths
  /// disagree with n, n out of range, negative retry bound, or in the
  /// semi-symmetric variant a nonzero responder key or an all-zero chosen key.
  void validate() const;

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

Party initiator(const ProtocolConfig& config);
PartyRole role_of(const ProtocolConfig& config, Party party);

/// Hands the initiative to the other party. In the semi-symmetric variant the
/// chosen key moves with it, so key_a and key_b are swapped.
ProtocolConfig reverse_roles(const ProtocolConfig& config);

enum class MessageKind { RetryRequest, KeyAnnouncement, MeasurementAnnouncement };
std::string_view to_string(MessageKind k);
MessageKind parse_message_kind(std::string_view text);

struct PublicMessage {
  Party sender;
  MessageKind kind;
  std::optional<BitString> payload;

  friend bool operator==(const PublicMessage&, const PublicMessage&) = default;
};

struct Attempt {
  BitString alice_measurement;
  BitString bob_measurement;
  std::vector<PublicMessage> messages;

  friend bool operator==(const Attempt&, const Attempt&) = default;
};

enum class SessionStatus { Agreed, RetryLimit };
std::string_view to_string(SessionStatus s);

struct SessionTranscript {
  ProtocolConfig config;
  std::vector<Attempt> attempts;
  std::optional<BitString> final_key_alice;
  std::optional<BitString> final_key_bob;
  int retries_used = 0;
  SessionStatus status = SessionStatus::Agreed;

  bool succeeded() const { return status == SessionStatus::Agreed; }
  /// All public messages across attempts, in order.
  std::vector<PublicMessage> public_messages() const;

  friend bool operator==(const SessionTranscript&, const SessionTranscript&) = default;
};

class RetryLimitError : public Error {
 public:
  explicit RetryLimitError(SessionTranscript transcript);
  const SessionTranscript& transcript() const { return transcript_; }

 private:
  SessionTranscript transcript_;
};

/// Observation points of one session. Each hook is optional.
struct SessionHooks {
  /// The entangled qubits in transit, right after the source prepared them.
  std::function<void(StateVector&, const RegisterLayout&)> on_distribution;
  /// Both parties have finished their unitaries; nothing measured yet.
  std::function<void(const StateVector&)> on_pre_measurement;
  std::function<void(const PublicMessage&)> on_public_message;
};

/// xor of the three arguments: the responder's key computation.
BitString derive_key(const BitString& own_key, const BitString& own_measurement,
                     const BitString& announced);

/// One pass of the quantum phase: fresh Bell pairs, both parties' unitaries,
/// Alice's then Bob's measurement, seeded by derive_seed(config.seed,
/// attempt_index). The returned attempt carries no messages. Does not
/// validate `config`.
Attempt run_attempt(const ProtocolConfig& config, int attempt_index,
                    const SessionHooks& hooks = {});

/// Runs a session of either variant to completion. Never throws for retry
/// exhaustion; the transcript status reports it instead.
SessionTranscript run_session(const ProtocolConfig& config, const SessionHooks& hooks = {});

/// Fully symmetric protocol. Throws RetryLimitError when every attempt up to
/// max_retries produced the all-zero key.
SessionTranscript run_fsebv(const ProtocolConfig& config, const SessionHooks& hooks = {});
/// Semi-symmetric protocol; a single attempt always suffices.
SessionTranscript run_ssebv(const ProtocolConfig& config, const SessionHooks& hooks = {});

}  // namespace sebv
