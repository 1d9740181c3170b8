#include <iostream>
#include <vector>

#include <isopoly/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isopoly::run_cli(args, std::cout, std::cerr);
}
