#include <iostream>
#include <string>
#include <vector>

#include "conelab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return conelab::cli::main(args, std::cout, std::cerr);
}
