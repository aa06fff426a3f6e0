#include <iostream>

#include "hiersum/cli.hpp"

int main(int argc, char** argv) {
  return hiersum::cli::run(argc, argv, std::cout, std::cerr);
}
