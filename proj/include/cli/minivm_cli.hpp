#pragma once

#include <ostream>

namespace cli
{

/// `minivm` entry point. Exit codes: 0 ok, 1 usage/parse/purity, 4 runtime error.
int minivm_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace cli
