#include "twolog/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return twolog::cli::run(argc, argv, std::cout, std::cerr); }
