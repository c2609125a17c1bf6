#include <iostream>
#include <string>
#include <vector>

#include "egt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return egt::cli::run(std::move(args), std::cout, std::cerr);
}
