#include "sebv/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "sebv/adversary.hpp"
#include "sebv/analysis.hpp"
#include "sebv/circuits.hpp"
#include "sebv/errors.hpp"
#include "sebv/protocol.hpp"
#include "sebv/records.hpp"
#include "sebv/state_vector.hpp"

namespace sebv::cli {
namespace {

struct Flags {
  std::string protocol = "fsebv";
  int n = 0;
  std::string key_a;
  std::string key_b;
  std::uint64_t shots = 2048;
  std::uint64_t seed = 0;
  bool reverse_roles = false;
  int max_retries = kDefaultMaxRetries;
  std::string attack;
  std::uint64_t sessions = 10000;
  std::string output;
  std::string format;
  std::string circuit = "sebv";

  std::vector<CLI::Option*> seed_options;
};

void add_output_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--output", f.output, "Write to PATH instead of standard output");
}

void add_key_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--n", f.n, "Key width in bits")->required();
  cmd.add_option("--key-a", f.key_a, "Alice's key, MSB first (default all-zero)");
  cmd.add_option("--key-b", f.key_b, "Bob's key, MSB first (default all-zero)");
}

void add_protocol_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--protocol", f.protocol, "fsebv or ssebv")
      ->check(CLI::IsMember({"fsebv", "ssebv"}));
  add_key_flags(cmd, f);
  cmd.add_flag("--reverse-roles", f.reverse_roles, "Hand the initiative to the other party");
}

void add_seed_flag(CLI::App& cmd, Flags& f) {
  f.seed_options.push_back(cmd.add_option("--seed", f.seed, "RNG seed (falls back to SEBV_SEED, then 0)"));
}

std::uint64_t resolve_seed(const Flags& f) {
  for (const CLI::Option* opt : f.seed_options) {
    if (opt->count() > 0) return f.seed;
  }
  if (const char* env = std::getenv("SEBV_SEED"); env != nullptr && *env != '\0') {
    const std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("SEBV_SEED must be an unsigned integer, got '" + text + "'");
    }
    try {
      return std::stoull(text);
    } catch (const std::out_of_range&) {
      throw ValidationError("SEBV_SEED out of range");
    }
  }
  return 0;
}

BitString parse_key(const std::string& text, int n, const char* flag) {
  if (text.empty()) return BitString::zeros(n);
  BitString key;
  try {
    key = BitString::parse(text);
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  }
  if (key.width() != n) {
    throw ValidationError(std::string(flag) + " has " + std::to_string(key.width()) +
                          " bits but --n is " + std::to_string(n));
  }
  return key;
}

void check_width(int n) {
  if (n < 1 || n > kMaxKeyWidth) {
    throw ValidationError("--n must be in [1, " + std::to_string(kMaxKeyWidth) + "], got " +
                          std::to_string(n));
  }
}

ProtocolConfig make_config(const Flags& f) {
  check_width(f.n);
  ProtocolConfig c;
  c.variant = parse_variant(f.protocol);
  c.n = f.n;
  c.key_a = parse_key(f.key_a, f.n, "--key-a");
  c.key_b = parse_key(f.key_b, f.n, "--key-b");
  c.seed = resolve_seed(f);
  c.max_retries = f.max_retries;
  c.roles_reversed = f.reverse_roles;
  c.validate();
  return c;
}

void require_format(const Flags& f, std::initializer_list<const char*> allowed) {
  if (f.format.empty()) return;
  for (const char* a : allowed) {
    if (f.format == a) return;
  }
  throw ValidationError("--format " + f.format + " is not supported by this subcommand");
}

// Whole-file replace: readers see the old file or the complete new one.
void write_atomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    file << text;
    file.flush();
    if (!file) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void emit(const Flags& f, std::ostream& out, const std::string& text) {
  if (f.output.empty()) {
    out << text;
  } else {
    write_atomically(f.output, text);
  }
}

int cmd_run(const Flags& f, std::ostream& out) {
  require_format(f, {"jsonl"});
  const ProtocolConfig config = make_config(f);
  const SessionTranscript t = run_session(config);
  emit(f, out, to_record(t) + "\n");
  return t.succeeded() ? kSuccess : kRetryExhausted;
}

int cmd_histogram(const Flags& f, std::ostream& out) {
  require_format(f, {"csv", "jsonl"});
  if (f.shots == 0) throw ValidationError("--shots must be positive");
  const ProtocolConfig config = make_config(f);
  if (config.n > kMaxHistogramKeyWidth) {
    throw ValidationError("histogram supports --n up to " +
                          std::to_string(kMaxHistogramKeyWidth));
  }
  Rng rng(config.seed);
  const OutcomeHistogram h = collect_histogram(config, f.shots, rng);
  emit(f, out, f.format == "jsonl" ? to_record(h) + "\n" : histogram_to_csv(h));
  return kSuccess;
}

int cmd_attack(const Flags& f, std::ostream& out) {
  require_format(f, {"jsonl"});
  if (f.sessions == 0) throw ValidationError("--sessions must be positive");
  const AttackKind kind = parse_attack_kind(f.attack);
  const ProtocolConfig config = make_config(f);
  Rng rng(config.seed);
  const AttackReport report = run_attack(kind, config, f.sessions, rng);
  emit(f, out, to_record(report, config) + "\n");
  return kSuccess;
}

int cmd_export_qasm(const Flags& f, std::ostream& out) {
  check_width(f.n);
  CircuitDescription circuit;
  if (f.circuit == "sebv") {
    const BitString key_b = parse_key(f.key_b, f.n, "--key-b");
    if (f.protocol == "ssebv" && !key_b.is_zero()) {
      throw ValidationError("the ssebv circuit requires Bob's key to be all-zero");
    }
    circuit = build_sebv_circuit(f.n, parse_key(f.key_a, f.n, "--key-a"), key_b);
  } else if (f.circuit == "bv") {
    if (!f.key_b.empty()) throw ValidationError("--key-b has no meaning for the bv circuit");
    circuit = build_bv_circuit(parse_key(f.key_a, f.n, "--key-a"));
  } else {
    if (!f.key_a.empty() || !f.key_b.empty()) {
      throw ValidationError("the bell circuit takes no keys");
    }
    circuit = build_bell_circuit(f.n);
  }
  emit(f, out, export_qasm(circuit));
  return kSuccess;
}

int cmd_bv(const Flags& f, std::ostream& out) {
  require_format(f, {"jsonl"});
  check_width(f.n);
  const BitString secret = parse_key(f.key_a, f.n, "--key-a");
  Rng rng(resolve_seed(f));
  const BitString recovered = run_bv(secret, rng);

  const CircuitDescription c = build_bv_circuit(secret);
  const std::vector<double> dist = subset_distribution(simulate(c), c.measured);
  const std::vector<ClassicalQuery> queries = classical_bv_queries(secret);

  std::string line = "{\"record\":\"bv\",\"n\":" + std::to_string(f.n) + ",\"secret\":\"" +
                     secret.to_string() + "\",\"seed\":" + std::to_string(rng.seed()) +
                     ",\"recovered\":\"" + recovered.to_string() + "\",\"probability\":";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", dist[secret.value()]);
  line += buf;
  line += ",\"quantum_queries\":1,\"classical_queries\":" + std::to_string(queries.size()) + "}\n";
  emit(f, out, line);
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-based Bernstein-Vazirani key distribution simulator", "sebv"};
  app.require_subcommand(1);
  Flags f;

  auto* run_cmd = app.add_subcommand("run", "Run one protocol session and print its transcript");
  add_protocol_flags(*run_cmd, f);
  add_seed_flag(*run_cmd, f);
  run_cmd->add_option("--max-retries", f.max_retries, "Zero-key retries before giving up")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--format", f.format, "jsonl");
  add_output_flags(*run_cmd, f);

  auto* hist_cmd = app.add_subcommand("histogram", "Tally joint readouts over many shots");
  add_protocol_flags(*hist_cmd, f);
  add_seed_flag(*hist_cmd, f);
  hist_cmd->add_option("--shots", f.shots, "Number of shots")->capture_default_str();
  hist_cmd->add_option("--format", f.format, "csv (default) or jsonl");
  add_output_flags(*hist_cmd, f);

  auto* attack_cmd = app.add_subcommand("attack", "Simulate an eavesdropper over many sessions");
  attack_cmd->add_option("--attack", f.attack, "passive or intercept-resend")
      ->required()
      ->check(CLI::IsMember({"passive", "intercept-resend"}));
  add_protocol_flags(*attack_cmd, f);
  add_seed_flag(*attack_cmd, f);
  attack_cmd->add_option("--sessions", f.sessions, "Number of sessions")->capture_default_str();
  attack_cmd->add_option("--max-retries", f.max_retries, "Zero-key retries per session")
      ->check(CLI::NonNegativeNumber);
  attack_cmd->add_option("--format", f.format, "jsonl");
  add_output_flags(*attack_cmd, f);

  auto* qasm_cmd = app.add_subcommand("export-qasm", "Write a circuit as OpenQASM 2.0");
  qasm_cmd->add_option("--circuit", f.circuit, "sebv (default), bv or bell")
      ->check(CLI::IsMember({"sebv", "bv", "bell"}));
  qasm_cmd->add_option("--protocol", f.protocol, "fsebv or ssebv (informational)")
      ->check(CLI::IsMember({"fsebv", "ssebv"}));
  add_key_flags(*qasm_cmd, f);
  add_output_flags(*qasm_cmd, f);

  auto* bv_cmd = app.add_subcommand("bv", "Run textbook Bernstein-Vazirani on --key-a");
  add_key_flags(*bv_cmd, f);
  add_seed_flag(*bv_cmd, f);
  bv_cmd->add_option("--format", f.format, "jsonl");
  add_output_flags(*bv_cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (*run_cmd) return cmd_run(f, out);
    if (*hist_cmd) return cmd_histogram(f, out);
    if (*attack_cmd) return cmd_attack(f, out);
    if (*qasm_cmd) return cmd_export_qasm(f, out);
    if (*bv_cmd) return cmd_bv(f, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace sebv::cli
