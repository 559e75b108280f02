#include <iostream>

#include "relmetric/cli.hpp"

int main(int argc, char** argv) { return relmetric::cli::run(argc, argv, std::cout, std::cerr); }
