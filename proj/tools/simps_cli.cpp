#include <iostream>

#include "simps/cli.hpp"

int main(int argc, char** argv) { return simps::run_cli(argc, argv, std::cout, std::cerr); }
