#include <iostream>

#include "polyroots/cli.hpp"

int main(int argc, char **argv) {
  return polyroots::cli::main_entry(argc, argv, std::cin, std::cout, std::cerr);
}
