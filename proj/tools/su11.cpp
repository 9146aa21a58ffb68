#include "su11/cli_io.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return su11::cli::run_cli(argc, argv, std::cout, std::cerr);
}
