#include <iostream>
#include <string>
#include <vector>

#include "outrank/api/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return outrank::api::cli_main(args, std::cout, std::cerr);
}
