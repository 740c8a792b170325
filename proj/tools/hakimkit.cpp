#include <iostream>

#include "hakimkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hakimkit::run_cli(args, std::cout, std::cerr);
}
