#include <iostream>

#include "rglsa/cli_io.hpp"

int main(int argc, char** argv) {
  return rglsa::cli_main(argc, argv, std::cin, std::cout, std::cerr);
}
