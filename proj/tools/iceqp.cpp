#include <iostream>

#include "iceqp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return iceqp::run_command(args, std::cin, std::cout, std::cerr);
}
