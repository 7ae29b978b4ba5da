#include <iostream>
#include <string>
#include <vector>

#include "relic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  relic::CliResult res = relic::run_cli(args);
  std::cout << res.out;
  std::cerr << res.err;
  return res.status;
}
