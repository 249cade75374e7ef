#include <iostream>

#include "wamen/cli.hpp"

int main(int argc, char** argv) { return wamen::run_cli(argc, argv, std::cout, std::cerr); }
