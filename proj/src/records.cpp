#include "sebv/records.hpp"

#include <json.hpp>
#include <optional>
#include <string>

#include "sebv/errors.hpp"

namespace sebv {
namespace {

using Json = nlohmann::ordered_json;

Json optional_bits(const std::optional<BitString>& b) {
  return b ? Json(b->to_string()) : Json(nullptr);
}

std::optional<BitString> parse_optional_bits(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return BitString::parse(j.get<std::string>());
}

}  // namespace

std::string to_record(const SessionTranscript& t) {
  const ProtocolConfig& c = t.config;
  Json j;
  j["record"] = "session";
  j["rng"] = std::string(Rng::kAlgorithm);
  j["variant"] = std::string(to_string(c.variant));
  j["n"] = c.n;
  j["key_a"] = c.key_a.to_string();
  j["key_b"] = c.key_b.to_string();
  j["seed"] = c.seed;
  j["max_retries"] = c.max_retries;
  j["roles_reversed"] = c.roles_reversed;
  j["initiator"] = std::string(to_string(initiator(c)));
  Json attempts = Json::array();
  for (std::size_t i = 0; i < t.attempts.size(); ++i) {
    const Attempt& a = t.attempts[i];
    Json messages = Json::array();
    for (const PublicMessage& m : a.messages) {
      Json mj;
      mj["sender"] = std::string(to_string(m.sender));
      mj["kind"] = std::string(to_string(m.kind));
      mj["payload"] = optional_bits(m.payload);
      messages.push_back(std::move(mj));
    }
    Json aj;
    aj["index"] = i;
    aj["alice_measurement"] = a.alice_measurement.to_string();
    aj["bob_measurement"] = a.bob_measurement.to_string();
    aj["messages"] = std::move(messages);
    attempts.push_back(std::move(aj));
  }
  j["attempts"] = std::move(attempts);
  j["final_key_alice"] = optional_bits(t.final_key_alice);
  j["final_key_bob"] = optional_bits(t.final_key_bob);
  j["retries_used"] = t.retries_used;
  j["status"] = std::string(to_string(t.status));
  return j.dump();
}

SessionTranscript transcript_from_record(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    if (j.at("record") != "session") throw ValidationError("not a session record");
    if (j.at("rng").get<std::string>() != Rng::kAlgorithm) {
      throw ValidationError("record was produced with RNG '" + j.at("rng").get<std::string>() +
                            "'");
    }
    SessionTranscript t;
    ProtocolConfig& c = t.config;
    c.variant = parse_variant(j.at("variant").get<std::string>());
    c.n = j.at("n").get<int>();
    c.key_a = BitString::parse(j.at("key_a").get<std::string>());
    c.key_b = BitString::parse(j.at("key_b").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.max_retries = j.at("max_retries").get<int>();
    c.roles_reversed = j.at("roles_reversed").get<bool>();
    for (const Json& aj : j.at("attempts")) {
      Attempt a{BitString::parse(aj.at("alice_measurement").get<std::string>()),
                BitString::parse(aj.at("bob_measurement").get<std::string>()),
                {}};
      for (const Json& mj : aj.at("messages")) {
        a.messages.push_back({parse_party(mj.at("sender").get<std::string>()),
                              parse_message_kind(mj.at("kind").get<std::string>()),
                              parse_optional_bits(mj.at("payload"))});
      }
      t.attempts.push_back(std::move(a));
    }
    t.final_key_alice = parse_optional_bits(j.at("final_key_alice"));
    t.final_key_bob = parse_optional_bits(j.at("final_key_bob"));
    t.retries_used = j.at("retries_used").get<int>();
    const std::string status = j.at("status").get<std::string>();
    if (status == to_string(SessionStatus::Agreed)) {
      t.status = SessionStatus::Agreed;
    } else if (status == to_string(SessionStatus::RetryLimit)) {
      t.status = SessionStatus::RetryLimit;
    } else {
      throw ValidationError("unknown session status '" + status + "'");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed session record: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("malformed session record: ") + e.what());
  }
}

std::string to_record(const AttackReport& r, const ProtocolConfig& config) {
  Json j;
  j["record"] = "attack";
  j["attack"] = std::string(to_string(r.attack_kind));
  j["variant"] = std::string(to_string(r.variant));
  j["n"] = r.n;
  j["key_a"] = config.key_a.to_string();
  j["key_b"] = config.key_b.to_string();
  j["roles_reversed"] = config.roles_reversed;
  j["sessions"] = r.sessions;
  j["attempts"] = r.attempts;
  j["parity_violations"] = r.parity_violations;
  j["parity_violation_rate"] = r.parity_violation_rate;
  j["successful_sessions"] = r.successful_sessions;
  j["eve_key_hits"] = r.eve_key_hits;
  j["eve_key_hit_rate"] = r.eve_key_hit_rate;
  j["alice_readout_counts"] = r.alice_readout_counts;
  j["bob_readout_counts"] = r.bob_readout_counts;
  return j.dump();
}

std::string to_record(const OutcomeHistogram& h) {
  Json j;
  j["record"] = "histogram";
  j["n"] = h.n;
  j["shots"] = h.shots;
  Json counts = Json::object();
  for (const auto& [readout, count] : h.counts) counts[readout.to_string()] = count;
  j["counts"] = std::move(counts);
  return j.dump();
}

}  // namespace sebv
