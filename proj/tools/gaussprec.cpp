#include <iostream>
#include <string>
#include <vector>

#include "gaussprec/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gaussprec::run_cli(args, std::cout, std::cerr);
}
