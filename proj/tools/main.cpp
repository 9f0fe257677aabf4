#include <iostream>

#include "cosenet/cli.hpp"

int main(int argc, char** argv) { return cosenet::run_cli(argc, argv, std::cout, std::cerr); }
