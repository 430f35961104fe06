#include <iostream>

#include "dpcob/cli.hpp"

int main(int argc, char** argv) { return dpcob::cli::run(argc, argv, std::cout, std::cerr); }
