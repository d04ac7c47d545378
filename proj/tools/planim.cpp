#include <iostream>

#include "planim/cli.hpp"

int main(int argc, char** argv) { return planim::cli::run(argc, argv, std::cout, std::cerr); }
