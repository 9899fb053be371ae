#include <iostream>

#include "unitsecant/cli.hpp"

int main(int argc, char** argv) { return unitsecant::cli::run(argc, argv, std::cout, std::cerr); }
