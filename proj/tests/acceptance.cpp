// Acceptance suite: runs every criterion of the invariant suite at full
// fleet size and prints one line per criterion.

#include <cstdlib>
#include <iostream>
#include <string>

#include "stokeslab/selftest.hpp"

int main(int argc, char** argv) {
  std::size_t fleet = 500;
  if (argc > 1) fleet = static_cast<std::size_t>(std::stoul(argv[1]));
  stokeslab::SelftestReport rep = stokeslab::run_selftest(fleet, &std::cerr);
  return stokeslab::print_report(rep, std::cout);
}
