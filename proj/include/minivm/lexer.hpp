#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace minivm
{

enum class Tok
{
    Ident,
    Keyword,
    Int,
    Real,
    Str,
    Op,
    End,
};

struct Token
{
    Tok kind;
    std::string text; // decoded value for strings
    int line = 1;
    int column = 1;

    bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
    bool op(std::string_view t) const { return is(Tok::Op, t); }
    bool kw(std::string_view t) const { return is(Tok::Keyword, t); }
};

/// MiniObj tokens. `//` starts a line comment. Throws ProgramError.
std::vector<Token> lex(std::string_view source);

} // namespace minivm
