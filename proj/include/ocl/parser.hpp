#pragma once

#include "ocl/ast.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ocl
{

struct Diagnostic
{
    SourceSpan span;
    std::string message;
};

/// Raised when a constraint file parses but one or more clauses break the
/// clause placement rules. Every offending clause is reported, not just the first.
class ConstraintFileError : public std::runtime_error
{
  public:
    explicit ConstraintFileError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic> &diagnostics() const noexcept { return diagnostics_; }

  private:
    std::vector<Diagnostic> diagnostics_;
};

/// Parses a standalone OCL expression. Throws SyntaxError.
ExprPtr parse_expression(std::string_view source);

/// Parses a constraint file:
///
///     file        := contextDecl+
///     contextDecl := "context" Name ("::" Name "(" params? ")" (":" TypeName)?)? clause+
///     clause      := ("inv" | "pre" | "post") Name? ":" expression
///
/// Throws SyntaxError on malformed input (including a file with no context
/// declarations) and ConstraintFileError when clauses fail validation.
ConstraintFile parse_constraint_file(std::string_view source, std::string source_name = "<input>");

} // namespace ocl
