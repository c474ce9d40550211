#include "nematicon/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return nematicon::cli::run(argc, argv, std::cout, std::cerr);
}
