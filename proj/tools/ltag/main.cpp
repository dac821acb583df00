#include <iostream>

#include "ltag/cli.hpp"

int main(int argc, char** argv) {
  return ltag::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
