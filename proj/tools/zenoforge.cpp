#include <iostream>
#include <string>
#include <vector>

#include "zenoforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zenoforge::cli_dispatch(args, std::cout, std::cerr);
}
