#include "fraclap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fraclap::cli::run(argc, argv, std::cout, std::cerr); }
