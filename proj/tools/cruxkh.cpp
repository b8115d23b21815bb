#include <iostream>

#include "cruxkh/cli.hpp"

int main(int argc, char** argv) { return ckh::run_cli(argc, argv, std::cout, std::cerr); }
