#include <iostream>

#include "common.hpp"
#include "qke/baselines.hpp"

namespace qke::cli {

namespace {

struct DemoOptions {
  std::string scheme;
  std::optional<std::uint64_t> seed;
  std::size_t bits = 0;
};

DomainParams demo_group(const DemoOptions& opt, RandomSource& rng) {
  if (opt.bits == 0) return DomainParams::create(23, 5, "demo-23");
  return generate_domain_params(opt.bits, rng);
}

int run_dh(const DemoOptions& opt) {
  auto rng = make_rng(opt.seed);
  const DomainParams params = demo_group(opt, *rng);
  // Without a seed the classic textbook exponents are used.
  const bool fixed = !opt.seed && opt.bits == 0;
  const DhKeypair alice = fixed ? make_dh_keypair(params, 6) : generate_dh_keypair(params, *rng);
  const DhKeypair bob = fixed ? make_dh_keypair(params, 15) : generate_dh_keypair(params, *rng);
  const BigUint k_ab = dh_shared(alice, bob.public_value);
  const BigUint k_ba = dh_shared(bob, alice.public_value);

  std::cout << "# Diffie-Hellman\n"
            << "p=" << params.p() << '\n'
            << "g=" << params.g() << '\n'
            << "alice.secret=" << alice.secret << '\n'
            << "alice.public=" << alice.public_value << "    # g^x_a mod p, sent to Bob\n"
            << "bob.secret=" << bob.secret << '\n'
            << "bob.public=" << bob.public_value << "    # g^x_b mod p, sent to Alice\n"
            << "alice.shared=" << k_ab << "    # k_ab = (g^x_b)^x_a mod p\n"
            << "bob.shared=" << k_ba << "    # k_ba = (g^x_a)^x_b mod p\n"
            << "keys_equal=" << (k_ab == k_ba ? "yes" : "no") << '\n';
  return k_ab == k_ba ? kExitOk : kExitUsage;
}

int run_elgamal(const DemoOptions& opt) {
  auto rng = make_rng(opt.seed);
  const DomainParams params = demo_group(opt, *rng);
  const bool fixed = !opt.seed && opt.bits == 0;
  const DhKeypair bob = fixed ? make_dh_keypair(params, 7) : generate_dh_keypair(params, *rng);
  const BigUint ephemeral = fixed ? BigUint(3) : sample_exponent(params, std::nullopt, *rng);
  const BigUint message = fixed ? BigUint(8) : rng->uniform_below(params.p() - 1) + 1;

  const BigUint k_s = mod_exp(bob.public_value, ephemeral, params.p());
  const ElgamalCiphertext ct = elgamal_encrypt(bob.public_value, message, ephemeral, params);
  const BigUint recovered = elgamal_decrypt(ct, bob.secret, params);

  std::cout << "# ElGamal (multiplicative)\n"
            << "p=" << params.p() << '\n'
            << "g=" << params.g() << '\n'
            << "bob.secret=" << bob.secret << '\n'
            << "bob.public=" << bob.public_value << "    # P_b = g^x_b mod p, published\n"
            << "alice.ephemeral_exponent=" << ephemeral << '\n'
            << "message=" << message << '\n'
            << "session_key=" << k_s << "    # k_s = P_b^y_a mod p\n"
            << "ciphertext.ephemeral=" << ct.ephemeral << "    # g^y_a mod p\n"
            << "ciphertext.body=" << ct.body << "    # m * k_s mod p\n"
            << "# c = (" << ct.ephemeral << ", " << ct.body << ")\n"
            << "recovered=" << recovered << "    # m = body * k_s^-1 mod p\n"
            << "round_trip=" << (recovered == message ? "yes" : "no") << '\n';
  return recovered == message ? kExitOk : kExitUsage;
}

}  // namespace

void register_demo(CLI::App& app, Command& selected) {
  auto opt = std::make_shared<DemoOptions>();
  CLI::App* cmd = app.add_subcommand("demo", "Annotated Diffie-Hellman or ElGamal transcript");
  cmd->add_option("scheme", opt->scheme, "dh | elgamal")
      ->required()
      ->check(CLI::IsMember({"dh", "elgamal"}));
  cmd->add_option("--seed", opt->seed, "Random exponents from this seed");
  cmd->add_option("--bits", opt->bits, "Generate a group of this size instead of p=23");
  cmd->callback([opt, &selected] {
    selected = [opt] { return opt->scheme == "dh" ? run_dh(*opt) : run_elgamal(*opt); };
  });
}

}  // namespace qke::cli
