#include <iostream>
#include <string>
#include <vector>

#include "neighborly/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return neighborly::dispatch(args, std::cout, std::cerr);
}
