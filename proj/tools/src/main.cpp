#include <iostream>

#include "densitylab/cli/run.hpp"

int main(int argc, char** argv) { return densitylab::cli::main_entry(argc, argv, std::cout, std::cerr); }
