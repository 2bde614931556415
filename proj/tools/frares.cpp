#include <iostream>
#include <string>
#include <vector>

#include "frares/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return frares::cli::run(args, std::cout, std::cerr);
}
