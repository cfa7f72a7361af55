#include <iostream>

#include "qboson/cli.hpp"

int main(int argc, char** argv) { return qb::cli_run(argc, argv, std::cout, std::cerr); }
