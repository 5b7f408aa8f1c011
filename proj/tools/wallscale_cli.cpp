#include <iostream>

#include "wallscale/cli.hpp"

int main(int argc, char** argv) { return wallscale::cli::run(argc, argv, std::cout, std::cerr); }
