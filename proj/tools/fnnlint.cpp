#include <iostream>
#include <string>
#include <vector>

#include "fnnlint/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fnnlint::cli::main_entry(args, std::cout, std::cerr);
}
