#include <iostream>

#include "wheelperc/cli.hpp"

int main(int argc, char** argv) { return wheelperc::run_cli(argc, argv, std::cout, std::cerr); }
