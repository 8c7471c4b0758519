#include <iostream>

#include "twoatom/cli.hpp"

int main(int argc, char** argv) {
  return twoatom::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
