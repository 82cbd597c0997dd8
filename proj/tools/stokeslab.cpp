#include <iostream>
#include <string>
#include <vector>

#include "stokeslab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stokeslab::cli::run(args, std::cin, std::cout, std::cerr);
}
