#include "minivm/lexer.hpp"

#include "minivm/ast.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace minivm
{

namespace
{

constexpr std::array<std::string_view, 19> kKeywords{
    "class", "interface", "extends", "implements", "public", "private", "pure", "def", "var", "main", "if",
    "else",  "while",     "return",  "new",        "self",   "true",    "false", "null",
};

constexpr std::array<std::string_view, 22> kOps{
    "==", "!=", "<=", ">=", "&&", "||", "<", ">", "+", "-", "*", "/", "%", "!", "=", ".", ",", ";", "(", ")", "{", "}",
};

bool is_keyword(std::string_view w)
{
    for (auto k : kKeywords)
        if (k == w)
            return true;
    return false;
}

} // namespace

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i)
        {
            if (src[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80)
                ++col;
        }
    };

    while (i < src.size())
    {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c)))
        {
            advance(1);
            continue;
        }
        if (src.compare(i, 2, "//") == 0)
        {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        Token t{Tok::End, "", line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            t.text = std::string(src.substr(i, j - i));
            t.kind = is_keyword(t.text) ? Tok::Keyword : Tok::Ident;
            advance(j - i);
        }
        else if (std::isdigit(static_cast<unsigned char>(c)))
        {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            bool real = false;
            if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1])))
            {
                real = true;
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                    ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E'))
            {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-'))
                    ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])))
                {
                    real = true;
                    j = k;
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                        ++j;
                }
            }
            t.text = std::string(src.substr(i, j - i));
            t.kind = real ? Tok::Real : Tok::Int;
            if (!real)
            {
                std::int64_t v;
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
                if (ec != std::errc{})
                    throw ProgramError(line, col, "integer literal out of range");
            }
            advance(j - i);
        }
        else if (c == '"')
        {
            std::size_t j = i + 1;
            std::string value;
            for (;;)
            {
                if (j >= src.size() || src[j] == '\n')
                    throw ProgramError(line, col, "unterminated string literal");
                if (src[j] == '"')
                    break;
                if (src[j] == '\\' && j + 1 < src.size())
                {
                    switch (src[j + 1])
                    {
                    case 'n':
                        value += '\n';
                        break;
                    case 't':
                        value += '\t';
                        break;
                    case '"':
                        value += '"';
                        break;
                    case '\\':
                        value += '\\';
                        break;
                    default:
                        throw ProgramError(line, col, "unknown escape in string literal");
                    }
                    j += 2;
                    continue;
                }
                value += src[j++];
            }
            t.kind = Tok::Str;
            t.text = std::move(value);
            advance(j + 1 - i);
        }
        else
        {
            std::string_view match;
            for (auto op : kOps)
                if (src.compare(i, op.size(), op) == 0)
                {
                    match = op;
                    break;
                }
            if (match.empty())
                throw ProgramError(line, col, std::string("unexpected character '") + c + "'");
            t.kind = Tok::Op;
            t.text = std::string(match);
            advance(match.size());
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{Tok::End, "", line, col});
    return out;
}

} // namespace minivm
