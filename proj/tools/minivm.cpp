#include "cli/minivm_cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return cli::minivm_main(argc, argv, std::cout, std::cerr); }
