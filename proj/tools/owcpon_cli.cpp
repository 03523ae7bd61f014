#include <iostream>

#include "owcpon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return owcpon::cli::run(args, std::cout, std::cerr);
}
