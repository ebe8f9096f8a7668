#include <iostream>

#include "lens/cli.hpp"

int main(int argc, char** argv) { return lens::cli::run(argc, argv, std::cout, std::cerr); }
