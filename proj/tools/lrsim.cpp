#include <iostream>

#include "lrsim/cli/commands.hpp"

int main(int argc, char** argv) { return lrsim::cli::run_cli(argc, argv, std::cout, std::cerr); }
