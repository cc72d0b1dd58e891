#include <iostream>

#include "bephap/cli.hpp"

int main(int argc, char** argv) {
  return bephap::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
