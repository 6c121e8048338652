#include <iostream>
#include <string>
#include <vector>

#include "coldgen/cli.hpp"

int main(int argc, char** argv) {
  return coldgen::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
