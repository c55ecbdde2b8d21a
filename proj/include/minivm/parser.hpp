#pragma once

#include "minivm/ast.hpp"

#include <string_view>

namespace minivm
{

/// Parses MiniObj source:
///
///     program   := (class | interface | main)*          -- exactly one main
///     class     := "class" N ("extends" N)? ("implements" N ("," N)*)? "{" member* "}"
///     member    := ("public"|"private")? ("var" N ";" | "pure"? "def" N "(" params? ")" block)
///     interface := "interface" N ("extends" N ("," N)*)? "{" ("pure"? "def" N "(" params? ")" ";")* "}"
///     main      := "main" block
///
/// Also checks the class structure (unknown bases, cycles, interface
/// conformance). Throws ProgramError.
Program parse_program(std::string_view source);

} // namespace minivm
