#include <iostream>

#include "sebv/cli.hpp"

int main(int argc, char** argv) { return sebv::cli::run(argc, argv, std::cout, std::cerr); }
