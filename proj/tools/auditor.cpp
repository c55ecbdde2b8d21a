#include "cli/audit_cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return cli::auditor_main(argc, argv, std::cout, std::cerr); }
