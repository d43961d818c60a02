#include <iostream>
#include <string>
#include <vector>

#include "hahn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hahn::run_command(args, std::cout, std::cerr);
}
