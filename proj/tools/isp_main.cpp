// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>
#include <iostream>

#include "isp/cli.hpp"

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv, argv + argc);
  return isp::run_cli(args, std::cout, std::cerr);
}
