#include <iostream>
#include <string>
#include <vector>

#include "nbr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nbr::run_cli(args, std::cout, std::cerr);
}
