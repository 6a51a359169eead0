#include <iostream>
#include <string>
#include <vector>

#include "otto/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return otto::run_cli(args, std::cout, std::cerr);
}
