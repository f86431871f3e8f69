#include "nematic_cli/run.hpp"

#include <iostream>

int main(int argc, char** argv) { return nematic::cli::main_entry(argc, argv, std::cout, std::cerr); }
