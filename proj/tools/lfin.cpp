#include <iostream>

#include "lfin/cli.hpp"

int main(int argc, char** argv) {
  return lfin::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
