#include <iostream>

#include "coalp/cli.hpp"

int main(int argc, char** argv) {
  return coalp::cli::main(argc, argv, std::cout, std::cerr);
}
