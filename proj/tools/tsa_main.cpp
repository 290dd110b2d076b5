#include <iostream>
#include <string>
#include <vector>

#include "tsa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tsa::cli::run(args, std::cout, std::cerr);
}
