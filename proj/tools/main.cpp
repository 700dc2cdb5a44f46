#include <iostream>

#include "cli_io.hpp"

int main(int argc, char** argv) {
  return gbsolve::cli::main_entry(argc, argv, std::cout, std::cerr);
}
