#include <iostream>

#include "gurag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  gurag::CommandOutcome r = gurag::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exitCode;
}
