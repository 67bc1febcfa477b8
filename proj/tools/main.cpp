#include <iostream>

#include "bphz/cli/cli.hpp"

int main(int argc, char** argv) { return bphz::cli::run_cli(argc, argv, std::cout, std::cerr); }
