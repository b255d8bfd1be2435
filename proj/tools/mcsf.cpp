#include <iostream>

#include "mcsf/cli.hpp"

int main(int argc, char** argv) { return mcsf::cli::run(argc, argv, std::cout, std::cerr); }
