#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "common.hpp"
#include "qke/keytext.hpp"
#include "qke/peer.hpp"

namespace qke::cli {

namespace {

struct PeerCliOptions {
  std::string listen;
  std::string connect;
  std::string key;
  std::string expect_params;
  std::size_t count = 1;
  bool allow_degenerate = false;
  std::uint64_t timeout_ms = static_cast<std::uint64_t>(kDefaultIoTimeout.count());
};

struct SessionResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

SessionResult run_one(ByteStream& stream, Role role, const KeyPair& pair,
                      const PeerOptions& options, bool allow_degenerate) {
  SessionResult result;
  std::ostringstream out;
  try {
    const PeerOutcome outcome = role == Role::kInitiator
                                    ? run_initiator(stream, pair, options)
                                    : run_responder(stream, pair, options);
    out << "role=" << to_string(role) << '\n'
        << "intermediate_sent=" << outcome.sent.value.to_hex() << '\n'
        << "intermediate_received=" << outcome.received.value.to_hex() << '\n';
    if (outcome.status == KeyStatus::kDegenerate && !allow_degenerate) {
      result.exit_code = kExitDegenerate;
      result.err = "error: degenerate shared key 1 refused (use --allow-degenerate to accept)\n";
    } else {
      if (outcome.status == KeyStatus::kDegenerate) out << "warning=degenerate_shared_key\n";
      out << "shared_key=" << outcome.shared_key.to_hex() << '\n';
    }
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e);
    if (e.code() == ErrorCode::kValidation || e.code() == ErrorCode::kParameter) {
      result.exit_code = kExitProtocol;
    }
    result.err = std::string("error: ") + e.what() + '\n';
  }
  result.out = out.str();
  return result;
}

int run_peer(const PeerCliOptions& opt) {
  if (opt.listen.empty() == opt.connect.empty()) {
    throw Failure(kExitUsage, "exactly one of --listen or --connect is required");
  }
  if (opt.count == 0) throw Failure(kExitUsage, "--count must be at least 1");

  const PrivateKey priv = load_private_key(opt.key);
  const KeyPair pair{priv, derive_public_key(priv)};
  PeerOptions options;
  if (!opt.expect_params.empty()) {
    options.expected_params = load_params(opt.expect_params);
    if (!(*options.expected_params == priv.params())) {
      throw Failure(kExitUsage, "--expect-params does not match the group of --key");
    }
  }
  const std::chrono::milliseconds timeout(opt.timeout_ms);

  if (!opt.connect.empty()) {
    Endpoint endpoint;
    try {
      endpoint = Endpoint::parse(opt.connect);
    } catch (const Error& e) {
      throw Failure(kExitUsage, e.what());
    }
    SocketStream stream = connect_tcp(endpoint, timeout);
    const SessionResult r = run_one(stream, Role::kInitiator, pair, options, opt.allow_degenerate);
    std::cout << r.out << std::flush;
    std::cerr << r.err;
    return r.exit_code;
  }

  Endpoint endpoint;
  try {
    endpoint = Endpoint::parse(opt.listen);
  } catch (const Error& e) {
    throw Failure(kExitUsage, e.what());
  }
  TcpListener listener = TcpListener::bind(endpoint);
  std::cout << "listening=" << listener.local_endpoint().to_string() << std::endl;

  // One thread and one independent session per accepted connection.
  std::vector<SessionResult> results(opt.count);
  std::vector<std::thread> workers;
  std::mutex print_mutex;
  for (std::size_t i = 0; i < opt.count; ++i) {
    SocketStream stream = listener.accept();
    stream.set_timeout(timeout);
    workers.emplace_back([&, i, s = std::move(stream)]() mutable {
      results[i] = run_one(s, Role::kResponder, pair, options, opt.allow_degenerate);
      std::lock_guard<std::mutex> lock(print_mutex);
      if (opt.count > 1) std::cout << "session=" << i + 1 << '\n';
      std::cout << results[i].out << std::flush;
      std::cerr << results[i].err;
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& r : results) {
    if (r.exit_code != kExitOk) return r.exit_code;
  }
  return kExitOk;
}

}  // namespace

void register_peer(CLI::App& app, Command& selected) {
  auto opt = std::make_shared<PeerCliOptions>();
  CLI::App* cmd = app.add_subcommand("peer", "Run a live key establishment over TCP");
  auto* listen = cmd->add_option("--listen", opt->listen, "Accept on host:port (port 0 = ephemeral)");
  auto* connect = cmd->add_option("--connect", opt->connect, "Connect to host:port");
  listen->excludes(connect);
  cmd->add_option("--key", opt->key, "Private key file")->required();
  cmd->add_option("--expect-params", opt->expect_params, "Reject groups other than this one");
  cmd->add_option("--count", opt->count, "Listen mode: number of connections to serve");
  cmd->add_flag("--allow-degenerate", opt->allow_degenerate, "Accept a shared key equal to 1");
  cmd->add_option("--timeout-ms", opt->timeout_ms, "Socket read/write timeout");
  cmd->callback([opt, &selected] { selected = [opt] { return run_peer(*opt); }; });
}

}  // namespace qke::cli
