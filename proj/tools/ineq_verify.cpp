#include <iostream>

#include "hypls/cli.hpp"

int main(int argc, char** argv) { return hypls::cli::run(argc, argv, std::cout, std::cerr); }
