#include <iostream>

#include "subgauss/cli.hpp"

int main(int argc, char** argv) { return subgauss::run_cli(argc, argv, std::cout, std::cerr); }
