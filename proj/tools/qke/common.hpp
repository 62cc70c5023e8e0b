#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qke/errors.hpp"
#include "qke/keys.hpp"
#include "qke/random.hpp"

namespace qke::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitDegenerate = 3,
  kExitNetwork = 4,
  kExitProtocol = 5,
  kExitScale = 6,
};

/// Thrown by command bodies to leave with a specific exit code.
class Failure : public std::runtime_error {
 public:
  Failure(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Exit code for a library error escaping a command.
int exit_code_for(const Error& error);

using Command = std::function<int()>;

void register_params(CLI::App& app, Command& selected);
void register_keygen(CLI::App& app, Command& selected);
void register_peer(CLI::App& app, Command& selected);
void register_attack(CLI::App& app, Command& selected);
void register_bench(CLI::App& app, Command& selected);
void register_demo(CLI::App& app, Command& selected);

std::unique_ptr<RandomSource> make_rng(const std::optional<std::uint64_t>& seed);

/// File helpers; any read/parse failure becomes Failure(kExitIo).
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
DomainParams load_params(const std::string& path);
PrivateKey load_private_key(const std::string& path);
PublicKey load_public_key(const std::string& path);

/// Hex argument to BigUint; Failure(kExitUsage) when malformed.
BigUint parse_hex_arg(const std::string& text, const char* flag);

}  // namespace qke::cli
