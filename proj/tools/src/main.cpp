#include <iostream>

#include "g4cli/cli.hpp"

int main(int argc, char** argv) { return g4::cli::run(argc, argv, std::cout, std::cerr); }
