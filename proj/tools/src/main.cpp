#include <iostream>

#include "pstcli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pstcli::run(args, std::cout, std::cerr);
}
