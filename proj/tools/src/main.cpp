#include <iostream>

#include "dcmd/io/cli.hpp"

int main(int argc, char** argv) {
  return dcmd::io::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
