#include <iostream>

#include "decohere/cli.hpp"

int main(int argc, char** argv) { return decohere::cli::main_entry(argc, argv, std::cout, std::cerr); }
