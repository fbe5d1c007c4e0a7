#include <iostream>

#include "knotrep/cli.hpp"

int main(int argc, char** argv) { return knotrep::cli::main(argc, argv, std::cout, std::cerr); }
