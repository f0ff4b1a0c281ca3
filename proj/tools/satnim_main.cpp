#include <iostream>
#include <string>
#include <vector>

#include "satnim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return satnim::cli::run_cli(std::move(args), std::cin, std::cout, std::cerr);
}
