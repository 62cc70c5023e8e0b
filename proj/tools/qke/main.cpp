#include <iostream>

#include "common.hpp"

int main(int argc, char** argv) {
  using namespace qke::cli;

  CLI::App app{"qke: two-component public-key secret establishment toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qke 0.1.0");

  Command selected;
  register_params(app, selected);
  register_keygen(app, selected);
  register_peer(app, selected);
  register_attack(app, selected);
  register_bench(app, selected);
  register_demo(app, selected);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return selected();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what() << '\n';
    return f.exit_code();
  } catch (const qke::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
