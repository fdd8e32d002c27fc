#include <iostream>
#include <string>
#include <vector>

#include "splitstep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return splitstep::cli::run(args, std::cout, std::cerr);
}
