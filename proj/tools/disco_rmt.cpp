#include <iostream>

#include "disco/cli.hpp"

int main(int argc, char** argv) { return disco::cli::run(argc, argv, std::cout, std::cerr); }
