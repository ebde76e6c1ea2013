#include <iostream>
#include <string>
#include <vector>

#include "dirac_sphere/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dirac_sphere::cli::run(args, std::cout, std::cerr);
}
