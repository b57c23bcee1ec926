#include <iostream>

#include "mtspec/cli.hpp"

int main(int argc, char** argv) { return mtspec::cli::run(argc, argv, std::cout, std::cerr); }
