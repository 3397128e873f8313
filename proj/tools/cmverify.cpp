#include <iostream>

#include "cmverify/cli.hpp"

int main(int argc, char** argv) { return cmverify::cli::main(argc, argv, std::cout, std::cerr); }
