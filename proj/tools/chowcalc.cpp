#include <iostream>

#include "chow/cli.hpp"

int main(int argc, char** argv) { return chow::cli::run(argc, argv, std::cout, std::cerr); }
