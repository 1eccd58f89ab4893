#include <iostream>

#include "modkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modkit::run_cli(args, std::cout, std::cerr);
}
