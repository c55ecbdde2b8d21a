#include "ocl/lexer.hpp"

#include <array>
#include <charconv>
#include <cstdlib>

namespace ocl
{

namespace
{

constexpr std::array<std::string_view, 11> keywords{
    "context", "inv", "pre", "post", "and", "or", "xor", "implies", "not", "self", "result",
};

bool ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char c)
{
    return ident_start(c) || (c >= '0' && c <= '9');
}

bool digit(char c)
{
    return c >= '0' && c <= '9';
}

class Lexer
{
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;)
        {
            skip_trivia();
            if (pos_ >= src_.size())
                break;
            out.push_back(next());
        }
        Token eof;
        eof.kind = TokenKind::EndOfInput;
        eof.span = SourceSpan{line_, column_, 0};
        eof.offset = chars_;
        out.push_back(std::move(eof));
        return out;
    }

  private:
    char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance()
    {
        const char c = src_[pos_++];
        if (c == '\n')
        {
            ++line_;
            column_ = 1;
            ++chars_;
        }
        else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80)
        {
            ++column_;
            ++chars_;
        }
    }

    void skip_trivia()
    {
        while (pos_ < src_.size())
        {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f')
                advance();
            else if (c == '-' && peek(1) == '-')
            {
                while (pos_ < src_.size() && peek() != '\n')
                    advance();
            }
            else
                break;
        }
    }

    Token next()
    {
        Token tok;
        const int line = line_;
        const int col = column_;
        const std::size_t start_chars = chars_;
        const std::size_t start = pos_;
        tok.offset = start_chars;

        auto finish = [&](TokenKind kind) {
            tok.kind = kind;
            if (tok.text.empty())
                tok.text = std::string(src_.substr(start, pos_ - start));
            tok.span = SourceSpan{line, col, static_cast<int>(chars_ - start_chars)};
            return tok;
        };

        const char c = peek();
        if (ident_start(c))
        {
            while (ident_char(peek()))
                advance();
            const auto word = src_.substr(start, pos_ - start);
            if (word == "true" || word == "false")
                return finish(TokenKind::BooleanLiteral);
            return finish(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier);
        }
        if (digit(c))
            return number(tok, finish);
        if (c == '\'')
            return string_literal(tok, finish, line, col);
        if (c == '@')
        {
            if (src_.substr(pos_, 4) == "@pre" && !ident_char(peek(4)))
            {
                for (int i = 0; i < 4; ++i)
                    advance();
                return finish(TokenKind::AtPreSuffix);
            }
            throw SyntaxError({line, col, 1}, "expected '@pre'");
        }

        auto two = src_.substr(pos_, 2);
        for (std::string_view op : {"->", "<>", "<=", ">="})
        {
            if (two == op)
            {
                advance();
                advance();
                return finish(TokenKind::Operator);
            }
        }
        if (two == "::")
        {
            advance();
            advance();
            return finish(TokenKind::Punctuation);
        }
        switch (c)
        {
        case '=':
        case '<':
        case '>':
        case '+':
        case '-':
        case '*':
        case '/':
            advance();
            return finish(TokenKind::Operator);
        case '(':
        case ')':
        case ',':
        case ':':
        case '.':
        case '|':
            advance();
            return finish(TokenKind::Punctuation);
        default:
            break;
        }
        throw SyntaxError({line, col, 1}, "unexpected character '" + printable(c) + "'");
    }

    static std::string printable(char c)
    {
        if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7F)
        {
            static constexpr char hex[] = "0123456789abcdef";
            const auto u = static_cast<unsigned char>(c);
            return std::string("\\x") + hex[u >> 4] + hex[u & 0xF];
        }
        return std::string(1, c);
    }

    template <typename Finish> Token number(Token &, Finish &finish)
    {
        const std::size_t start = pos_;
        const int line = line_;
        const int col = column_;
        bool real = false;
        while (digit(peek()))
            advance();
        if (peek() == '.' && digit(peek(1)))
        {
            real = true;
            advance();
            while (digit(peek()))
                advance();
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2)))))
        {
            real = true;
            advance();
            if (peek() == '+' || peek() == '-')
                advance();
            while (digit(peek()))
                advance();
        }
        const auto text = src_.substr(start, pos_ - start);
        if (!real)
        {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || p != text.data() + text.size())
                throw SyntaxError({line, col, static_cast<int>(text.size())}, "integer literal out of range");
            return finish(TokenKind::IntegerLiteral);
        }
        return finish(TokenKind::RealLiteral);
    }

    template <typename Finish> Token string_literal(Token &tok, Finish &, int line, int col)
    {
        const std::size_t start_chars = chars_;
        advance(); // opening quote
        std::string value;
        for (;;)
        {
            if (pos_ >= src_.size() || peek() == '\n')
                throw SyntaxError({line, col, 1}, "unterminated string literal");
            const char c = peek();
            if (c == '\'')
            {
                advance();
                break;
            }
            if (c == '\\')
            {
                advance();
                const char e = peek();
                switch (e)
                {
                case 'n':
                    value += '\n';
                    break;
                case 't':
                    value += '\t';
                    break;
                case '\\':
                case '\'':
                    value += e;
                    break;
                default:
                    throw SyntaxError({line_, column_, 1}, "unknown escape sequence");
                }
                advance();
                continue;
            }
            value += c;
            advance();
        }
        // The token text keeps the decoded value; span covers the quoted form.
        tok.kind = TokenKind::StringLiteral;
        tok.text = std::move(value);
        tok.span = SourceSpan{line, col, static_cast<int>(chars_ - start_chars)};
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t chars_ = 0;
    int line_ = 1;
    int column_ = 1;
};

} // namespace

bool is_keyword(std::string_view word)
{
    for (auto k : keywords)
        if (k == word)
            return true;
    return false;
}

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

} // namespace ocl
