#include <iostream>
#include <string>
#include <vector>

#include "liegeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return liegeo::run_command(args, std::cout, std::cerr);
}
