#include <iostream>

#include "jdx/cli.hpp"

int main(int argc, char** argv) { return jdx::cli::run(argc, argv, std::cout, std::cerr); }
