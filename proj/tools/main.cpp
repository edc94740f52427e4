#include <iostream>

#include "weakwave/cli.hpp"

int main(int argc, char** argv) { return weakwave::cli::run(argc, argv, std::cout, std::cerr); }
