#include <iostream>
#include <string>
#include <vector>

#include "hyperstack/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperstack::cli::run_command(args, std::cin, std::cout);
}
