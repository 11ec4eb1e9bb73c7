#include <iostream>
#include <string>
#include <vector>

#include "backflow/cli.hpp"

int main(int argc, char** argv) {
  return backflow::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
