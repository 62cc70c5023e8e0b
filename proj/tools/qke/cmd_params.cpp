#include <iostream>

#include "common.hpp"
#include "qke/keytext.hpp"
#include "qke/modmath.hpp"

namespace qke::cli {

namespace {

struct ParamsOptions {
  std::size_t bits = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_params(const ParamsOptions& opt) {
  if (opt.bits < 5) throw Failure(kExitUsage, "--bits must be at least 5");
  auto rng = make_rng(opt.seed);
  const DomainParams params = generate_domain_params(opt.bits, *rng);
  const std::string text = render_params_text(params);
  if (!opt.out.empty()) write_file(opt.out, text);
  std::cout << text;
  return kExitOk;
}

}  // namespace

void register_params(CLI::App& app, Command& selected) {
  auto opt = std::make_shared<ParamsOptions>();
  CLI::App* cmd = app.add_subcommand("params", "Generate a safe-prime group with a primitive root");
  cmd->add_option("--bits", opt->bits, "Bit length of the prime p (>= 5)")->required();
  cmd->add_option("--seed", opt->seed, "Deterministic seed");
  cmd->add_option("--out", opt->out, "Also write the parameter block to this file");
  cmd->callback([opt, &selected] { selected = [opt] { return run_params(*opt); }; });
}

}  // namespace qke::cli
