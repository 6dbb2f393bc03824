#include "kdvres/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kdvres::cli::run(argc, argv, std::cout, std::cerr); }
