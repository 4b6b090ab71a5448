#include <iostream>

#include "rohull/cli.hpp"

int main(int argc, char** argv) { return rohull::run_cli(argc, argv, std::cout, std::cerr); }
