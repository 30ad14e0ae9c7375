#include <iostream>
#include <string>
#include <vector>

#include "alphafair/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return alphafair::run_cli(args, std::cout, std::cerr);
}
