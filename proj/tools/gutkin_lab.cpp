#include "gutkin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gutkin::cli_main(argc, argv, std::cout, std::cerr); }
