#include <iostream>

#include "common.hpp"
#include "qke/cryptanalysis.hpp"

namespace qke::cli {

namespace {

struct AttackOptions {
  std::string mode;
  std::string public_key;
  std::string peer_public;
  std::string insider_key;
  std::string msg;
  std::string msg_ab;
  std::string msg_ba;
  std::string truth;
  std::size_t show = 20;
};

const char* heading(AdversaryModel model) {
  switch (model) {
    case AdversaryModel::kPublicOnly: return "Public key analysis: x+z=c1, y+z=c2 (mod p-1)";
    case AdversaryModel::kChannel:
      return "Channel analysis: both public keys and both intermediates (c1..c6)";
    case AdversaryModel::kInsider:
      return "Insider analysis: x+z=c1, y+z=c2, w(x*x_e + y*y_e)=c3 (mod p-1)";
  }
  return "";
}

void print_report(const SolutionReport& report, std::size_t show) {
  const std::string prefix = std::string(to_string(report.interpretation)) + ".";
  std::cout << prefix << "count=" << report.candidate_count << '\n'
            << prefix << "assignments=" << report.assignment_count << '\n'
            << prefix << "contains_truth="
            << (report.truth_supplied ? (report.contains_true_key ? "yes" : "no") : "unknown")
            << '\n';
  for (std::size_t i = 0; i < report.candidates.size() && i < show; ++i) {
    const KeyTriple& t = report.candidates[i];
    std::cout << prefix << "candidate=" << t.x << ',' << t.y << ',' << t.z << '\n';
  }
}

int run_attack(const AttackOptions& opt) {
  const PublicKey alice = load_public_key(opt.public_key);
  const DlogSolver oracle(alice.params);

  ConstraintSystem system;
  if (opt.mode == "public") {
    system = constraints_from_public_key(alice, oracle);
  } else if (opt.mode == "channel") {
    if (opt.peer_public.empty() || opt.msg_ab.empty() || opt.msg_ba.empty()) {
      throw Failure(kExitUsage, "channel mode needs --peer-public, --msg-ab and --msg-ba");
    }
    const PublicKey bob = load_public_key(opt.peer_public);
    system = constraints_from_transcript(alice, bob,
                                         IntermediateValue{parse_hex_arg(opt.msg_ab, "--msg-ab")},
                                         IntermediateValue{parse_hex_arg(opt.msg_ba, "--msg-ba")},
                                         oracle);
  } else {
    if (opt.insider_key.empty() || opt.msg.empty()) {
      throw Failure(kExitUsage, "insider mode needs --insider-key and --msg");
    }
    const PrivateKey eve = load_private_key(opt.insider_key);
    system = constraints_from_insider(alice, eve, IntermediateValue{parse_hex_arg(opt.msg, "--msg")},
                                      oracle);
  }

  std::optional<PrivateKey> truth;
  if (!opt.truth.empty()) truth = load_private_key(opt.truth);

  std::cout << "# " << heading(system.model) << '\n'
            << "mode=" << to_string(system.model) << '\n'
            << "p=" << alice.params.p().to_dec() << '\n'
            << "g=" << alice.params.g().to_dec() << '\n'
            << "modulus=" << system.modulus << '\n'
            << "constraints=" << system.constraint_count() << '\n';
  for (const auto& k : system.knowns) std::cout << k.label << '=' << k.value << '\n';
  std::cout << std::flush;

  const PrivateKey* truth_ptr = truth ? &*truth : nullptr;
  for (WInterpretation interp : {WInterpretation::kDerivedFromKey, WInterpretation::kFreeVariable}) {
    print_report(enumerate_solutions(system.with_interpretation(interp), truth_ptr), opt.show);
  }
  return kExitOk;
}

}  // namespace

void register_attack(CLI::App& app, Command& selected) {
  auto opt = std::make_shared<AttackOptions>();
  CLI::App* cmd = app.add_subcommand(
      "attack", "Count private keys consistent with what an adversary with a dlog oracle learns");
  cmd->add_option("--mode", opt->mode, "public | channel | insider")
      ->required()
      ->check(CLI::IsMember({"public", "channel", "insider"}));
  cmd->add_option("--public", opt->public_key, "Target's public key file")->required();
  cmd->add_option("--peer-public", opt->peer_public, "channel: the other party's public key file");
  cmd->add_option("--msg-ab", opt->msg_ab, "channel: intermediate sent by the target (hex)");
  cmd->add_option("--msg-ba", opt->msg_ba, "channel: intermediate sent to the target (hex)");
  cmd->add_option("--insider-key", opt->insider_key, "insider: the insider's own private key file");
  cmd->add_option("--msg", opt->msg, "insider: intermediate the target sent to the insider (hex)");
  cmd->add_option("--truth", opt->truth, "Target's real private key, to check containment");
  cmd->add_option("--show", opt->show, "Candidates to list per interpretation");
  cmd->callback([opt, &selected] { selected = [opt] { return run_attack(*opt); }; });
}

}  // namespace qke::cli
