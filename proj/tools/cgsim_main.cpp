#include <iostream>

#include "cgsim/cli.hpp"

int main(int argc, char** argv) {
  return cgsim::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
