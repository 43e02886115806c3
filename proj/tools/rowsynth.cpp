#include <iostream>
#include <string>
#include <vector>

#include "rowsynth/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return rowsynth::cli::run(args, std::cout, std::cerr);
}
