#include <iostream>

#include "batchcode/cli.hpp"

int main(int argc, char** argv) { return batchcode::run_cli(argc, argv, std::cout, std::cerr); }
