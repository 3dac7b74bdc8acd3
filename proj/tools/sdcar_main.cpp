#include <string>
#include <vector>

#include "sdcar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sdcar::run_cli(std::move(args));
}
