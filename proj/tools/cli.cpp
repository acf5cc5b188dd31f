#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <json.hpp>

#include "nnsig/dlmdp.hpp"
#include "nnsig/errors.hpp"
#include "nnsig/metrics.hpp"
#include "nnsig/rng.hpp"
#include "nnsig/sig.hpp"
#include "nnsig/sync.hpp"
#include "nnsig/transport.hpp"
#include "nnsig/xof.hpp"

namespace nnsig::cli {

namespace {

using json = nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write to " + path);
}

/// --seed wins, then NNSIG_SEED, then fresh entropy.
Bytes resolve_seed(const std::string& seed_hex) {
  if (!seed_hex.empty()) return from_hex(seed_hex);
  if (const char* env = std::getenv("NNSIG_SEED"); env != nullptr && *env != '\0') {
    return from_hex(env);
  }
  Bytes seed(32);
  SeededRng::from_entropy("cli-seed").fill(seed);
  return seed;
}

std::string fingerprint(const Bytes& pk_file) {
  const auto digest = shake256({as_bytes("nnsig-fingerprint"), pk_file}, 8);
  return to_hex(digest);
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json_mode = false;

  void emit(const json& j) const { out << j.dump() << "\n"; }
  int fail(int code, const std::string& message) const {
    err << "error: " << message << "\n";
    return code;
  }
};

/// Maps library exceptions onto the exit-code classes.
template <class F> int guarded(const Context& ctx, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    return ctx.fail(kIoFailure, e.what());
  } catch (const InvalidParameter& e) {
    return ctx.fail(kBadParameters, e.what());
  } catch (const LimitExceeded& e) {
    return ctx.fail(kBadParameters, e.what());
  } catch (const MalformedEncoding& e) {
    return ctx.fail(kMalformedEncoding, e.what());
  } catch (const UnsupportedVersion& e) {
    return ctx.fail(kMalformedEncoding, e.what());
  } catch (const DimensionMismatch& e) {
    return ctx.fail(kMalformedEncoding, e.what());
  } catch (const Error& e) {
    return ctx.fail(kBadParameters, e.what());
  }
}

// ------------------------------------------------------------------ keygen

struct KeygenArgs {
  std::uint64_t p = 257;
  std::size_t n = 26;
  std::size_t rho = 10;
  std::size_t l = 0;
  std::size_t u = 2;
  std::string seed;
  std::string pk_path;
  std::string sk_path;
  std::string shared_path;
};

int cmd_keygen(const Context& ctx, const KeygenArgs& args) {
  return guarded(ctx, [&] {
    const FieldParams params(args.p);
    const Bytes seed = resolve_seed(args.seed);
    const NetworkConfig config{args.n, params, args.rho, seed};
    config.validate();
    SeededRng rng(seed, "keygen");
    const auto keys =
        keygen(config, rng, args.l == 0 ? std::nullopt : std::optional<std::size_t>(args.l));

    const auto pk_bytes = serialize_public_key(keys.pk);
    write_file(args.pk_path, pk_bytes);
    write_file(args.sk_path, serialize_secret_key(keys.sk));
    if (!args.shared_path.empty()) {
      SeededRng q_rng(seed, "shared-q");
      SyncConfig shared{keys.sk.w, VectorZp::random(params, args.n, q_rng), args.u};
      shared.validate();
      write_file(args.shared_path, serialize_sync_config(shared));
    }

    const auto fp = fingerprint(pk_bytes);
    if (ctx.json_mode) {
      ctx.emit({{"command", "keygen"},
                {"p", args.p},
                {"n", args.n},
                {"rho", args.rho},
                {"l", keys.pk.l},
                {"public_key", args.pk_path},
                {"secret_key", args.sk_path},
                {"shared_setup", args.shared_path},
                {"fingerprint", fp}});
    } else {
      ctx.out << "parameters: p=" << args.p << " n=" << args.n << " rho=" << args.rho
              << " l=" << keys.pk.l << "\n";
      ctx.out << "public key: " << args.pk_path << " (" << pk_bytes.size() << " bytes)\n";
      ctx.out << "secret key: " << args.sk_path << "\n";
      if (!args.shared_path.empty()) ctx.out << "shared setup: " << args.shared_path << "\n";
      ctx.out << "fingerprint: " << fp << "\n";
    }
    return static_cast<int>(kOk);
  });
}

// ------------------------------------------------------------------ sync

struct SyncArgs {
  std::string listen;
  std::string connect;
  std::string config_path;
  std::string out_path;
  std::string seed;
};

int cmd_sync(const Context& ctx, const SyncArgs& args) {
  return guarded(ctx, [&]() -> int {
    if (args.listen.empty() == args.connect.empty()) {
      return ctx.fail(kBadParameters, "give exactly one of --listen or --connect");
    }
    const auto config = parse_sync_config(read_file(args.config_path));
    const bool listening = !args.listen.empty();
    const auto [host, port] = parse_endpoint(listening ? args.listen : args.connect);
    const auto role = listening ? SyncRole::Responder : SyncRole::Initiator;
    const Bytes seed = resolve_seed(args.seed);
    SeededRng rng(seed, listening ? "sync-responder" : "sync-initiator");
    SyncSession session(config, role, rng);

    std::optional<VectorZp> theta;
    try {
      std::unique_ptr<Transport> transport;
      if (listening) {
        SocketListener listener(host, port);
        transport = listener.accept();
      } else {
        transport = SocketTransport::connect(host, port);
      }
      theta = run_protocol(session, *transport);
    } catch (const TransportError& e) {
      return ctx.fail(kConnectionFailure, e.what());
    } catch (const ParameterMismatch& e) {
      return ctx.fail(kProtocolViolation, std::string("parameter mismatch: ") + e.what());
    } catch (const InvalidState& e) {
      return ctx.fail(kProtocolViolation, e.what());
    } catch (const MalformedFrame& e) {
      return ctx.fail(kProtocolViolation, std::string("malformed frame: ") + e.what());
    } catch (const UnknownTag& e) {
      return ctx.fail(kProtocolViolation, e.what());
    } catch (const LengthOverflow& e) {
      return ctx.fail(kProtocolViolation, e.what());
    } catch (const DimensionMismatch& e) {
      return ctx.fail(kProtocolViolation, e.what());
    }

    const auto encoded = serialize_theta(*theta);
    write_file(args.out_path, encoded);
    const auto digest = to_hex(shake256(encoded, 8));
    if (ctx.json_mode) {
      ctx.emit({{"command", "sync"},
                {"role", listening ? "responder" : "initiator"},
                {"theta", args.out_path},
                {"theta_digest", digest}});
    } else {
      ctx.out << "role: " << (listening ? "responder" : "initiator") << "\n";
      ctx.out << "theta: " << args.out_path << "\n";
      ctx.out << "theta digest: " << digest << "\n";
    }
    return kOk;
  });
}

// ------------------------------------------------------------------ sign / verify

struct SignArgs {
  std::string sk_path;
  std::string pk_path;
  std::string theta_path;
  std::string message_path;
  std::string sig_path;
  std::string seed;
  bool literal = false;
};

int cmd_sign(const Context& ctx, const SignArgs& args) {
  return guarded(ctx, [&] {
    const auto sk = parse_secret_key(read_file(args.sk_path));
    const auto theta = parse_theta(read_file(args.theta_path), sk.params());
    const auto message = read_file(args.message_path);
    auto rng = args.seed.empty() && std::getenv("NNSIG_SEED") == nullptr
                   ? SeededRng::from_entropy("sign")
                   : SeededRng(resolve_seed(args.seed), "sign");
    const auto sig = sign(sk, theta, message, rng);
    const auto encoded = serialize_signature(sig);
    write_file(args.sig_path, encoded);
    if (ctx.json_mode) {
      ctx.emit({{"command", "sign"}, {"signature", args.sig_path}, {"bytes", encoded.size()}});
    } else {
      ctx.out << "signature: " << args.sig_path << " (" << encoded.size() << " bytes)\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const Context& ctx, const SignArgs& args) {
  return guarded(ctx, [&] {
    const auto pk = parse_public_key(read_file(args.pk_path));
    const auto theta = parse_theta(read_file(args.theta_path), pk.params());
    const auto message = read_file(args.message_path);
    const auto sig = parse_signature(read_file(args.sig_path), pk.params());
    const bool ok = args.literal ? verify_literal(pk, theta, message, sig)
                                       : verify(pk, theta, message, sig);
    if (ctx.json_mode) {
      ctx.emit({{"command", "verify"},
                {"valid", ok},
                {"formula", args.literal ? "literal" : "corrected"}});
    } else {
      ctx.out << (ok ? "signature valid" : "signature INVALID") << "\n";
    }
    return static_cast<int>(ok ? kOk : kInvalidSignature);
  });
}

// ------------------------------------------------------------------ params

struct ParamsArgs {
  std::size_t n = 26;
  std::string p = "257";
  unsigned p_bits = 0;
  std::vector<double> levels{128};
};

int cmd_params(const Context& ctx, const ParamsArgs& args) {
  return guarded(ctx, [&]() -> int {
    BigInt p;
    if (args.p_bits > 0) {
      p = largest_prime_below_pow2(args.p_bits);
    } else {
      try {
        p = BigInt(args.p);
      } catch (const std::exception&) {
        return ctx.fail(kBadParameters, "cannot parse --p '" + args.p + "'");
      }
      std::mt19937_64 witness(1);
      if (p < 3 || !boost::multiprecision::miller_rabin_test(p, 40, witness)) {
        return ctx.fail(kBadParameters, "p = " + args.p + " is not prime");
      }
    }
    if (args.n < 2) return ctx.fail(kBadParameters, "n must be at least 2");

    const double bits = classical_security_bits(args.n, p);
    const double keyspace = keyspace_bits(args.n, p);
    json levels = json::array();
    if (!ctx.json_mode) {
      ctx.out << "n: " << args.n << "\n";
      ctx.out << "p: " << p.str() << "\n";
      ctx.out << "log2 brute-force cost: " << fixed(bits) << "\n";
      ctx.out << "log2 key space: " << fixed(keyspace) << "\n";
    }
    for (double level : args.levels) {
      const auto est = estimate_security(args.n, p, level);
      if (ctx.json_mode) {
        levels.push_back({{"level", level},
                          {"classical", est.meets_classical},
                          {"quantum_doubled_requirement", est.meets_quantum_strict},
                          {"quantum_doubled_cost", est.meets_quantum_halved}});
      } else {
        auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
        ctx.out << "level " << level << ": classical " << verdict(est.meets_classical)
                << ", quantum log2T>=2l " << verdict(est.meets_quantum_strict)
                << ", quantum 2log2T>=l " << verdict(est.meets_quantum_halved) << "\n";
      }
    }
    if (ctx.json_mode) {
      ctx.emit({{"command", "params"},
                {"n", args.n},
                {"p", p.str()},
                {"classical_bits", bits},
                {"quantum_bits", 2 * bits},
                {"keyspace_bits", keyspace},
                {"levels", levels}});
    }
    return kOk;
  });
}

// ------------------------------------------------------------------ attack

struct AttackArgs {
  std::size_t n = 2;
  std::uint64_t p = 5;
  std::string seed;
};

std::string perm_text(const PermutationMatrix& perm) {
  std::string s = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(perm[i]);
  }
  return s + "]";
}

int cmd_attack(const Context& ctx, const AttackArgs& args) {
  return guarded(ctx, [&]() -> int {
    if (args.n > kDefaultNLimit || args.p > kDefaultPLimit) {
      return ctx.fail(kBadParameters, "attack guardrail: needs n <= " +
                                          std::to_string(kDefaultNLimit) + " and p <= " +
                                          std::to_string(kDefaultPLimit));
    }
    const FieldParams params(args.p);
    SeededRng rng(resolve_seed(args.seed), "attack");
    const auto planted = make_instance(args.n, params, rng);
    const auto start = std::chrono::steady_clock::now();
    const auto solutions = brute_force_solve(planted.instance);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const bool recovered =
        std::find(solutions.begin(), solutions.end(), planted.planted) != solutions.end();

    if (ctx.json_mode) {
      json sols = json::array();
      for (const auto& s : solutions) {
        sols.push_back({{"exponent", s.exponent},
                        {"perm", std::vector<std::uint32_t>(s.perm.indices().begin(),
                                                            s.perm.indices().end())}});
      }
      ctx.emit({{"command", "attack"},
                {"n", args.n},
                {"p", args.p},
                {"planted_exponent", planted.planted.exponent},
                {"planted_perm", std::vector<std::uint32_t>(planted.planted.perm.indices().begin(),
                                                            planted.planted.perm.indices().end())},
                {"solutions", sols},
                {"recovered", recovered},
                {"elapsed_ms", elapsed_ms}});
    } else {
      ctx.out << "instance: n=" << args.n << " p=" << args.p << "\n";
      ctx.out << "planted: a=" << planted.planted.exponent
              << " L=" << perm_text(planted.planted.perm) << "\n";
      ctx.out << "solutions: " << solutions.size() << "\n";
      for (const auto& s : solutions) {
        ctx.out << "  a=" << s.exponent << " L=" << perm_text(s.perm) << "\n";
      }
      ctx.out << "planted recovered: " << (recovered ? "yes" : "no") << "\n";
      ctx.out << "elapsed: " << fixed(elapsed_ms, 3) << " ms\n";
    }
    return recovered ? kOk : kBadParameters;
  });
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  std::size_t n = 26;
  std::uint64_t p = 257;
  std::size_t rho = 10;
  bool instrument = false;
  std::string seed;
};

int cmd_bench(const Context& ctx, const BenchArgs& args) {
  return guarded(ctx, [&] {
    const FieldParams params(args.p);
    const Bytes seed = args.seed.empty() ? Bytes{0x62, 0x65, 0x6e, 0x63, 0x68}
                                         : resolve_seed(args.seed);
    const NetworkConfig config{args.n, params, args.rho, seed};
    config.validate();
    SeededRng rng(seed, "bench");
    const auto start = std::chrono::steady_clock::now();
    const auto keys = keygen(config, rng);
    const auto theta = VectorZp::random(params, args.n, rng);
    const auto sig = sign(keys.sk, theta, as_bytes("bench"), rng);
    const bool ok = verify(keys.pk, theta, as_bytes("bench"), sig);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    const auto formula = formula_sizes(args.n, args.p, args.rho);
    const auto measured = measured_sizes(keys.pk, keys.sk, sig);
    const auto ops = args.instrument ? instrumented_op_counts(args.n, args.p, args.rho, seed)
                                     : op_count_report(args.n, args.p);

    if (ctx.json_mode) {
      json j{{"command", "bench"},
             {"p", args.p},
             {"n", args.n},
             {"rho", args.rho},
             {"l", keys.pk.l},
             {"roundtrip_ok", ok},
             {"formula", {{"pk_bytes", formula.pk_bytes},
                          {"sk_bytes", formula.sk_bytes},
                          {"sig_bits", formula.sig_bits},
                          {"hash_bits", formula.hash_bits}}},
             {"measured", {{"pk_bytes", measured.pk_bytes},
                           {"sk_bytes", measured.sk_bytes},
                           {"sig_bits", measured.sig_bits()}}},
             {"ops", {{"keygen_formula", ops.keygen_formula},
                      {"sign_formula", ops.sign_formula},
                      {"verify_formula", ops.verify_formula}}}};
      if (ops.verify_measured) {
        j["ops"]["keygen_measured"] = ops.keygen_measured->total();
        j["ops"]["sign_measured"] = ops.sign_measured->total();
        j["ops"]["verify_measured"] = ops.verify_measured->total();
      }
      json rows = json::array();
      for (const auto& row : reference_rows()) {
        const auto f = formula_sizes(row.n, row.p, row.rho);
        rows.push_back({{"level", row.security_level},
                        {"p", row.p},
                        {"n", row.n},
                        {"rho", row.rho},
                        {"published", {{"hash_bits", row.hash_bits},
                                       {"sig_bits", row.sig_bits},
                                       {"pk_bytes", row.pk_bytes},
                                       {"sk_bytes", row.sk_bytes}}},
                        {"formula", {{"hash_bits", f.hash_bits},
                                     {"sig_bits", f.sig_bits},
                                     {"pk_bytes", f.pk_bytes},
                                     {"sk_bytes", f.sk_bytes}}}});
      }
      j["reference_rows"] = rows;
      ctx.emit(j);
      return static_cast<int>(kOk);
    }

    auto& o = ctx.out;
    o << "parameters: p=" << args.p << " n=" << args.n << " rho=" << args.rho
      << " l=" << keys.pk.l << "\n";
    o << "roundtrip: " << (ok ? "ok" : "FAILED") << " (" << fixed(elapsed_ms, 1) << " ms)\n";
    o << "\n";
    o << std::left << std::setw(14) << "size" << std::right << std::setw(12) << "formula"
      << std::setw(12) << "measured" << "\n";
    o << std::left << std::setw(14) << "public key" << std::right << std::setw(10)
      << formula.pk_bytes << " B" << std::setw(10) << measured.pk_bytes << " B\n";
    o << std::left << std::setw(14) << "secret key" << std::right << std::setw(10)
      << formula.sk_bytes << " B" << std::setw(10) << measured.sk_bytes << " B\n";
    o << std::left << std::setw(14) << "signature" << std::right << std::setw(8)
      << formula.sig_bits << " bit" << std::setw(8) << measured.sig_bits() << " bit\n";
    o << std::left << std::setw(14) << "hash length" << std::right << std::setw(8)
      << formula.hash_bits << " bit\n";
    o << "\n";
    o << std::left << std::setw(14) << "field ops" << std::right << std::setw(16) << "formula"
      << std::setw(14) << "measured" << "\n";
    auto op_row = [&](const char* name, double f, const std::optional<OpTally>& m) {
      o << std::left << std::setw(14) << name << std::right << std::setw(16) << fixed(f, 1)
        << std::setw(14) << (m ? std::to_string(m->total()) : std::string("-")) << "\n";
    };
    op_row("keygen", ops.keygen_formula, ops.keygen_measured);
    op_row("sign", ops.sign_formula, ops.sign_measured);
    op_row("verify", ops.verify_formula, ops.verify_measured);
    o << "\n";
    o << "published reference rows vs. closed-form sizes:\n";
    for (const auto& row : reference_rows()) {
      const auto f = formula_sizes(row.n, row.p, row.rho);
      auto cell = [](std::uint64_t published, std::uint64_t computed) {
        return std::to_string(published) + "/" + std::to_string(computed) +
               (published == computed ? "" : " MISMATCH");
      };
      o << "  level " << row.security_level << " (" << row.p << ", " << row.n << ", " << row.rho
        << "): hash " << cell(row.hash_bits, f.hash_bits) << " bit; sig "
        << cell(row.sig_bits, f.sig_bits) << " bit; pk " << cell(row.pk_bytes, f.pk_bytes)
        << " B; sk " << cell(row.sk_bytes, f.sk_bytes) << " B\n";
    }
    return static_cast<int>(kOk);
  });
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neural-network multivariate signature tool", "nnsig"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  app.add_flag("--json", json_mode, "Emit one JSON object per command");

  KeygenArgs keygen_args;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  keygen_cmd->add_option("--p", keygen_args.p, "Prime modulus")->capture_default_str();
  keygen_cmd->add_option("--n", keygen_args.n, "Neuron count")->capture_default_str();
  keygen_cmd->add_option("--rho", keygen_args.rho, "Unroll depth")->capture_default_str();
  keygen_cmd->add_option("--l", keygen_args.l, "Split index (default n/2)");
  keygen_cmd->add_option("--u", keygen_args.u, "Exponent draws for the shared setup")
      ->capture_default_str();
  keygen_cmd->add_option("--seed", keygen_args.seed, "Hex seed (falls back to NNSIG_SEED)");
  keygen_cmd->add_option("--pk", keygen_args.pk_path, "Public key output")->required();
  keygen_cmd->add_option("--sk", keygen_args.sk_path, "Secret key output")->required();
  keygen_cmd->add_option("--export-shared", keygen_args.shared_path,
                         "Write the shared setup (W, Q) for sync");

  SyncArgs sync_args;
  auto* sync_cmd = app.add_subcommand("sync", "Synchronize the threshold vector with a peer");
  sync_cmd->add_option("--listen", sync_args.listen, "host:port to accept one peer on");
  sync_cmd->add_option("--connect", sync_args.connect, "host:port of the listening peer");
  sync_cmd->add_option("--config", sync_args.config_path, "Shared setup file")->required();
  sync_cmd->add_option("--out", sync_args.out_path, "Theta output file")->required();
  sync_cmd->add_option("--seed", sync_args.seed, "Hex seed");

  SignArgs sign_args;
  auto* sign_cmd = app.add_subcommand("sign", "Sign a message file");
  sign_cmd->add_option("--sk", sign_args.sk_path, "Secret key")->required();
  sign_cmd->add_option("--theta", sign_args.theta_path, "Theta file")->required();
  sign_cmd->add_option("--in", sign_args.message_path, "Message file")->required();
  sign_cmd->add_option("--out", sign_args.sig_path, "Signature output")->required();
  sign_cmd->add_option("--seed", sign_args.seed, "Hex seed");

  SignArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature");
  verify_cmd->add_option("--pk", verify_args.pk_path, "Public key")->required();
  verify_cmd->add_option("--theta", verify_args.theta_path, "Theta file")->required();
  verify_cmd->add_option("--in", verify_args.message_path, "Message file")->required();
  verify_cmd->add_option("--sig", verify_args.sig_path, "Signature file")->required();
  verify_cmd->add_flag("--paper-literal-verify", verify_args.literal,
                       "Use the uncorrected f(W̄_x (σ - c)) check");

  ParamsArgs params_args;
  auto* params_cmd = app.add_subcommand("params", "Brute-force security estimates");
  params_cmd->add_option("--n", params_args.n, "Neuron count")->capture_default_str();
  auto* p_opt = params_cmd->add_option("--p", params_args.p, "Prime modulus (decimal)");
  params_cmd->add_option("--p-bits", params_args.p_bits, "Use the largest prime below 2^bits")
      ->excludes(p_opt);
  params_cmd->add_option("--level", params_args.levels, "Security level(s) in bits");

  AttackArgs attack_args;
  auto* attack_cmd = app.add_subcommand("attack", "Plant and brute-force a small instance");
  attack_cmd->add_option("--n", attack_args.n, "Matrix size")->capture_default_str();
  attack_cmd->add_option("--p", attack_args.p, "Prime modulus")->capture_default_str();
  attack_cmd->add_option("--seed", attack_args.seed, "Hex seed");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Sizes and operation counts");
  bench_cmd->add_option("--n", bench_args.n, "Neuron count")->capture_default_str();
  bench_cmd->add_option("--p", bench_args.p, "Prime modulus")->capture_default_str();
  bench_cmd->add_option("--rho", bench_args.rho, "Unroll depth")->capture_default_str();
  bench_cmd->add_flag("--instrument", bench_args.instrument, "Count field operations");
  bench_cmd->add_option("--seed", bench_args.seed, "Hex seed");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameters;
  }

  const Context ctx{out, err, json_mode};
  if (*keygen_cmd) return cmd_keygen(ctx, keygen_args);
  if (*sync_cmd) return cmd_sync(ctx, sync_args);
  if (*sign_cmd) return cmd_sign(ctx, sign_args);
  if (*verify_cmd) return cmd_verify(ctx, verify_args);
  if (*params_cmd) return cmd_params(ctx, params_args);
  if (*attack_cmd) return cmd_attack(ctx, attack_args);
  if (*bench_cmd) return cmd_bench(ctx, bench_args);
  return kBadParameters;
}

} // namespace nnsig::cli
