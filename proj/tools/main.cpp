#include <iostream>

#include "tfrom/cli.hpp"

int main(int argc, char** argv) { return tfrom::run_cli(argc, argv, std::cout, std::cerr); }
