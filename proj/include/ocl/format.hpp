#pragma once

#include "ocl/ast.hpp"

#include <string>

namespace ocl
{

/// Renders an expression in concrete syntax, inserting parentheses only where
/// precedence or non-associativity requires them. The output reparses to a
/// structurally equal tree.
std::string format_expr(const Expr &e);

std::string format_real(double value);

} // namespace ocl
