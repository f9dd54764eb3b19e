#include <iostream>

#include "biharm/cli.hpp"

int main(int argc, char** argv) { return biharm::cli::main(argc, argv, std::cout, std::cerr); }
