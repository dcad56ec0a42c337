#include <iostream>

#include "xxz/cli.hpp"

int main(int argc, char** argv) {
  return xxz::cli::main_entry(argc, argv, std::cout, std::cerr);
}
