#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ocl
{

/// Location of a lexeme or AST node. Line and column are 1-based; length is
/// measured in characters (code points), not bytes.
struct SourceSpan
{
    int line = 1;
    int column = 1;
    int length = 0;

    bool operator==(const SourceSpan &) const = default;
};

std::string to_string(const SourceSpan &span);

enum class TokenKind
{
    Keyword,
    Identifier,
    IntegerLiteral,
    RealLiteral,
    StringLiteral,
    BooleanLiteral,
    Operator,
    Punctuation,
    AtPreSuffix,
    EndOfInput,
};

std::string_view to_string(TokenKind kind);

struct Token
{
    TokenKind kind = TokenKind::EndOfInput;
    std::string text;
    SourceSpan span;
    // Character offset of the first character in the source.
    std::size_t offset = 0;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    bool is_op(std::string_view t) const
    {
        return (kind == TokenKind::Operator || kind == TokenKind::Punctuation) && text == t;
    }
};

/// Lexical or syntactic error in constraint text.
class SyntaxError : public std::runtime_error
{
  public:
    SyntaxError(SourceSpan span, const std::string &message);

    const SourceSpan &span() const noexcept { return span_; }
    const std::string &message() const noexcept { return message_; }

  private:
    SourceSpan span_;
    std::string message_;
};

} // namespace ocl
