#include <iostream>

#include "fdradiance/cli.hpp"

int main(int argc, char** argv) { return fdradiance::cli::run(argc, argv, std::cout, std::cerr); }
