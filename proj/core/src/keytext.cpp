#include "qke/keytext.hpp"

#include <array>
#include <sstream>
#include <vector>

#include "qke/errors.hpp"

namespace qke {

namespace {

constexpr std::string_view kPrivateLabel = "QKE PRIVATE KEY";
constexpr std::string_view kPublicLabel = "QKE PUBLIC KEY";
constexpr std::string_view kParamsLabel = "QKE PARAMETERS";
constexpr std::string_view kWhitespace = " \t\r\n\f\v";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

std::string begin_line(std::string_view label) {
  return "-----BEGIN " + std::string(label) + "-----";
}

std::string end_line(std::string_view label) { return "-----END " + std::string(label) + "-----"; }

struct Field {
  std::string_view name;
  const BigUint* value;
};

std::string render(std::string_view label, std::initializer_list<Field> fields) {
  std::ostringstream out;
  out << begin_line(label) << '\n';
  for (const Field& f : fields) out << f.name << " = " << f.value->to_hex() << '\n';
  out << end_line(label) << '\n';
  return out.str();
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kFormat, "line " + std::to_string(line) + ": " + message);
}

bool canonical_hex(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return s.size() == 1 || s[0] != '0';
}

struct Block {
  std::string label;
  std::vector<BigUint> values;
};

Block parse_block(std::string_view text, std::string_view want_label) {
  std::vector<std::string_view> lines;
  const std::string_view body = trim(text);
  for (std::size_t pos = 0; pos <= body.size();) {
    const std::size_t nl = body.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? body.size() : nl;
    lines.push_back(trim(body.substr(pos, end - pos)));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  constexpr std::string_view kBeginPrefix = "-----BEGIN ";
  constexpr std::string_view kDashes = "-----";
  const std::string_view first = lines.front();
  if (!first.starts_with(kBeginPrefix) || !first.ends_with(kDashes) ||
      first.size() < kBeginPrefix.size() + kDashes.size()) {
    fail(1, "expected '-----BEGIN QKE ...-----'");
  }
  Block block;
  block.label = std::string(first.substr(kBeginPrefix.size(),
                                         first.size() - kBeginPrefix.size() - kDashes.size()));
  std::vector<std::string_view> names;
  if (block.label == kPrivateLabel) {
    names = {"p", "g", "x", "y", "z"};
  } else if (block.label == kPublicLabel) {
    names = {"p", "g", "P", "Q"};
  } else if (block.label == kParamsLabel) {
    names = {"p", "g"};
  } else {
    fail(1, "unknown block type '" + block.label + "'");
  }
  if (!want_label.empty() && block.label != want_label) {
    fail(1, "expected a " + std::string(want_label) + " block, found " + block.label);
  }

  std::size_t line_no = 2;
  for (std::string_view name : names) {
    const std::size_t idx = line_no - 1;
    if (idx >= lines.size() || lines[idx].starts_with("-----")) {
      fail(line_no, "missing field '" + std::string(name) + "'");
    }
    const std::string_view line = lines[idx];
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(line_no, "expected 'name = value', found '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key != name) {
      fail(line_no, "expected field '" + std::string(name) + "', found '" + std::string(key) + "'");
    }
    if (!canonical_hex(value)) {
      fail(line_no, "field '" + std::string(name) +
                        "' is not lowercase hex without leading zeros: '" + std::string(value) + "'");
    }
    block.values.push_back(BigUint::from_hex(value));
    ++line_no;
  }
  const std::size_t end_idx = line_no - 1;
  if (end_idx >= lines.size()) fail(line_no, "missing '" + end_line(block.label) + "'");
  if (lines[end_idx] != end_line(block.label)) {
    if (lines[end_idx].starts_with("-----END ")) {
      fail(line_no, "END line '" + std::string(lines[end_idx]) + "' does not match BEGIN");
    }
    fail(line_no, "unexpected line '" + std::string(lines[end_idx]) + "'");
  }
  if (end_idx + 1 != lines.size()) fail(line_no + 1, "unexpected content after END line");
  return block;
}

DomainParams params_from(const Block& block) {
  return DomainParams::create(block.values[0], block.values[1]);
}

PrivateKey private_from(const Block& block) {
  return PrivateKey::from_exponents(params_from(block), block.values[2], block.values[3],
                                    block.values[4]);
}

PublicKey public_from(const Block& block) {
  PublicKey key{block.values[2], block.values[3], params_from(block)};
  if (!validate_public_key(key)) {
    throw Error(ErrorCode::kValidation, "public key residues must lie in [1, p-1]");
  }
  return key;
}

}  // namespace

std::string render_key_text(const PrivateKey& key) {
  const DomainParams& params = key.params();
  return render(kPrivateLabel, {{"p", &params.p()},
                                {"g", &params.g()},
                                {"x", &key.x()},
                                {"y", &key.y()},
                                {"z", &key.z()}});
}

std::string render_key_text(const PublicKey& key) {
  return render(kPublicLabel,
                {{"p", &key.params.p()}, {"g", &key.params.g()}, {"P", &key.P}, {"Q", &key.Q}});
}

std::string render_params_text(const DomainParams& params) {
  return render(kParamsLabel, {{"p", &params.p()}, {"g", &params.g()}});
}

ParsedKey parse_key_text(std::string_view text) {
  const Block block = parse_block(text, {});
  if (block.label == kPrivateLabel) return private_from(block);
  if (block.label == kPublicLabel) return public_from(block);
  fail(1, "expected a key block, found " + block.label);
}

PrivateKey parse_private_key_text(std::string_view text) {
  return private_from(parse_block(text, kPrivateLabel));
}

PublicKey parse_public_key_text(std::string_view text) {
  return public_from(parse_block(text, kPublicLabel));
}

DomainParams parse_params_text(std::string_view text) {
  return params_from(parse_block(text, kParamsLabel));
}

}  // namespace qke
