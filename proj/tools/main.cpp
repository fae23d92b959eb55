#include <iostream>

#include "xgeom/cli.hpp"

int main(int argc, char** argv) { return xgeom::cli::run(argc, argv, std::cout, std::cerr); }
