#include <iostream>

#include "bigbracket/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bigbracket::cli::run(std::move(args), std::cout, std::cerr);
}
