#pragma once

#include "minivm/ast.hpp"
#include "minivm/classes.hpp"

#include <string>
#include <vector>

namespace minivm
{

struct PurityDiagnostic
{
    std::string cls;
    std::string method;
    int line = 0;
    std::string message;

    std::string to_string() const;
};

/// Static purity rules for methods declared `pure`: no field assignment, no
/// sequence mutation (add/removeLast/set), no print, no allocation, and every
/// called user method must be pure. Calls are checked by name across the
/// whole program, since the receiver's dynamic class is not known statically.
std::vector<PurityDiagnostic> check_purity(const Program &p, const ClassTable &table);
std::vector<PurityDiagnostic> check_purity(const Program &p);

/// Sequence built-ins that change the sequence.
bool is_mutating_seq_method(const std::string &name);
/// Sequence built-ins that only read it.
bool is_reading_seq_method(const std::string &name);

} // namespace minivm
