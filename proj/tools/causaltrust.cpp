#include <iostream>

#include "causaltrust/cli.hpp"

int main(int argc, char** argv) {
  return causaltrust::cli::run(argc, argv, std::cout, std::cerr);
}
