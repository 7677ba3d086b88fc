#include <iostream>
#include <vector>

#include "tempinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tempinv::run(args, std::cout, std::cerr);
}
