#include <iostream>
#include <string>
#include <vector>

#include "qht_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qht::cli::run(args, std::cout, std::cerr);
}
