#include "common.hpp"

#include <fstream>
#include <sstream>

#include "qke/keytext.hpp"

namespace qke::cli {

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kNetwork: return kExitNetwork;
    case ErrorCode::kScale: return kExitScale;
    case ErrorCode::kProtocol:
    case ErrorCode::kFormat:
    case ErrorCode::kUnsupported:
    case ErrorCode::kIncomplete:
    case ErrorCode::kProtocolOrder:
      return kExitProtocol;
    default:
      return kExitUsage;
  }
}

std::unique_ptr<RandomSource> make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::make_unique<SeededRandom>(*seed);
  return std::make_unique<SystemRandom>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kExitIo, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents) || !out.flush()) {
    throw Failure(kExitIo, "cannot write '" + path + "'");
  }
}

namespace {

template <typename Parse>
auto load(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Failure(kExitIo, "'" + path + "': " + e.what());
  }
}

}  // namespace

DomainParams load_params(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_params_text(t); });
}

PrivateKey load_private_key(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_private_key_text(t); });
}

PublicKey load_public_key(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_public_key_text(t); });
}

BigUint parse_hex_arg(const std::string& text, const char* flag) {
  try {
    return BigUint::from_hex(text);
  } catch (const Error&) {
    throw Failure(kExitUsage, std::string(flag) + " expects a hexadecimal integer, got '" + text + "'");
  }
}

}  // namespace qke::cli
