#include <vector>

#include "capprox/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return capprox::cli::run_cli(std::move(args));
}
