#include <iostream>

#include "ptk_cli/cli.hpp"

int main(int argc, char** argv) { return ptk::cli::main_entry(argc, argv, std::cout, std::cerr); }
