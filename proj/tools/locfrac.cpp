#include "locfrac_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return locfrac::cli::run(std::move(args), std::cout, std::cerr);
}
