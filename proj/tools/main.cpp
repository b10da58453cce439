#include <iostream>

#include "cayley/cli.hpp"

int main(int argc, char** argv) { return cayley::run_cli(argc, argv, std::cout, std::cerr); }
