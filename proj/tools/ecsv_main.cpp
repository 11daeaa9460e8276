#include <iostream>
#include <string>
#include <vector>

#include "ecsv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ecsv::cli::run(args, std::cout, std::cerr);
}
