#include <iostream>

#include "antisym/cli.hpp"

int main(int argc, char** argv) { return antisym::cli::main(argc, argv, std::cout, std::cerr); }
