#include <iostream>
#include <sstream>

#include "common.hpp"
#include "qke/keytext.hpp"

namespace qke::cli {

namespace {

struct KeygenOptions {
  std::string params;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string exponents;  // test hook: "x,y,z" in decimal
};

std::vector<BigUint> split_exponents(const std::string& text) {
  std::vector<BigUint> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(BigUint::from_dec(item));
    } catch (const Error&) {
      throw Failure(kExitUsage, "--exponents expects x,y,z in decimal");
    }
  }
  if (out.size() != 3) throw Failure(kExitUsage, "--exponents expects exactly three values");
  return out;
}

int run_keygen(const KeygenOptions& opt) {
  const DomainParams params = load_params(opt.params);

  KeyPair pair = [&] {
    if (!opt.exponents.empty()) {
      const auto e = split_exponents(opt.exponents);
      PrivateKey priv = PrivateKey::from_exponents(params, e[0], e[1], e[2]);
      PublicKey pub = derive_public_key(priv);
      return KeyPair{std::move(priv), std::move(pub)};
    }
    auto rng = make_rng(opt.seed);
    return generate_keypair(params, *rng);
  }();

  const std::string priv_path = opt.out + ".priv";
  const std::string pub_path = opt.out + ".pub";
  write_file(priv_path, render_key_text(pair.private_key));
  write_file(pub_path, render_key_text(pair.public_key));
  std::cout << "private_key_file=" << priv_path << '\n'
            << "public_key_file=" << pub_path << '\n'
            << "P=" << pair.public_key.P.to_hex() << '\n'
            << "Q=" << pair.public_key.Q.to_hex() << '\n';
  return kExitOk;
}

}  // namespace

void register_keygen(CLI::App& app, Command& selected) {
  auto opt = std::make_shared<KeygenOptions>();
  CLI::App* cmd = app.add_subcommand("keygen", "Generate a key pair for a parameter file");
  cmd->add_option("--params", opt->params, "Parameter block written by 'qke params'")->required();
  cmd->add_option("--out", opt->out, "Output prefix; writes PREFIX.priv and PREFIX.pub")->required();
  cmd->add_option("--seed", opt->seed, "Deterministic seed");
  cmd->add_option("--exponents", opt->exponents)->group("");
  cmd->callback([opt, &selected] { selected = [opt] { return run_keygen(*opt); }; });
}

}  // namespace qke::cli
