#include <iostream>

#include "hype/cli.hpp"

int main(int argc, char** argv) { return hype::cli::run(argc, argv, std::cout, std::cerr); }
