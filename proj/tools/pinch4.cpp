#include <iostream>
#include <string>
#include <vector>

#include "pinch4/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pinch4::dispatch(args, std::cout, std::cerr);
}
