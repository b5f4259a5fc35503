#include <iostream>
#include <string>
#include <vector>

#include "biopt/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return biopt::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
