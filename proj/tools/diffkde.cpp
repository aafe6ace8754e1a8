#include <iostream>

#include "diffkde/cli.hpp"

int main(int argc, char** argv) { return diffkde::cli::main(argc, argv, std::cout, std::cerr); }
