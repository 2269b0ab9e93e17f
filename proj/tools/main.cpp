#include <iostream>

#include "imvs/cli.hpp"

int main(int argc, char** argv) {
  return imvs::RunCli(argc, argv, std::cout, std::cerr);
}
