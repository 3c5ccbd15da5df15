#include <iostream>
#include <string>
#include <vector>

#include "cli_config.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  try {
    return spinbath_cli::run(spinbath_cli::parse_config(args));
  } catch (const spinbath_cli::HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const spinbath_cli::UsageError& e) {
    std::cerr << "spinbath: " << e.what() << "\nRun `spinbath --help` for usage.\n";
    return 1;
  }
}
