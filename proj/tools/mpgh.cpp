#include <iostream>

#include "mpgh/cli.hpp"

int main(int argc, char** argv) { return mpgh::cli::cli_main(argc, argv, std::cout, std::cerr); }
