#pragma once

#include "ocl/ast.hpp"
#include "ocl/parser.hpp"

#include <set>
#include <string>
#include <vector>

namespace ocl
{

/// Checks the placement rules for one clause:
///   - inv: only under a class context; no `result`, no `@pre`
///   - pre: only under a method context; no `result`, no `@pre`
///   - post: only under a method context; `@pre` navigations may not nest or
///     mention quantifier variables bound outside them
///
/// When `fields` is given, every bare identifier must name a quantifier
/// variable, a context parameter or one of those fields; without it bare
/// identifiers that are not parameters are assumed to be implicit-self fields
/// and left for the evaluator.
std::vector<Diagnostic> validate_clause(const Clause &clause, const ContextDecl &context,
                                        const std::set<std::string> *fields = nullptr);

} // namespace ocl
