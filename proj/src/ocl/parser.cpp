#include "ocl/parser.hpp"

#include "ocl/lexer.hpp"
#include "ocl/validate.hpp"

#include <cstdlib>

namespace ocl
{

ConstraintFileError::ConstraintFileError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
          std::string msg;
          for (const auto &d : diagnostics)
          {
              if (!msg.empty())
                  msg += "\n";
              msg += to_string(d.span) + ": " + d.message;
          }
          return msg;
      }()),
      diagnostics_(std::move(diagnostics))
{
}

namespace
{

class Parser
{
  public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ExprPtr expression_only()
    {
        auto e = expression();
        if (peek().kind != TokenKind::EndOfInput)
            throw SyntaxError(peek().span, "unexpected '" + peek().text + "' after expression");
        return e;
    }

    ConstraintFile file(std::string source_name)
    {
        ConstraintFile out;
        out.source_name = std::move(source_name);
        while (peek().is_keyword("context"))
            out.decls.push_back(context_decl());
        if (peek().kind != TokenKind::EndOfInput)
            throw SyntaxError(peek().span, "expected 'context', found '" + peek().text + "'");
        if (out.decls.empty())
            throw SyntaxError(peek().span, "no context declarations");
        return out;
    }

  private:
    const Token &peek(std::size_t ahead = 0) const
    {
        const std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    const Token &take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept_op(std::string_view op)
    {
        if (peek().is_op(op))
        {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_keyword(std::string_view kw)
    {
        if (peek().is_keyword(kw))
        {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token &expect_op(std::string_view op)
    {
        if (!peek().is_op(op))
            throw SyntaxError(peek().span, "expected '" + std::string(op) + "', found " + describe(peek()));
        return take();
    }

    const Token &expect_ident(std::string_view what)
    {
        if (peek().kind != TokenKind::Identifier)
            throw SyntaxError(peek().span, "expected " + std::string(what) + ", found " + describe(peek()));
        return take();
    }

    static std::string describe(const Token &t)
    {
        if (t.kind == TokenKind::EndOfInput)
            return "end of input";
        return "'" + t.text + "'";
    }

    // Span from `start` up to the end of the last consumed token.
    SourceSpan span_from(const Token &start) const
    {
        const Token &last = toks_[pos_ > 0 ? pos_ - 1 : 0];
        const auto end = last.offset + static_cast<std::size_t>(last.span.length);
        SourceSpan s = start.span;
        s.length = end > start.offset ? static_cast<int>(end - start.offset) : start.span.length;
        return s;
    }

    // ---- constraint file ------------------------------------------------

    ContextDecl context_decl()
    {
        const Token &kw = take(); // context
        ContextDecl decl;
        decl.class_name = expect_ident("class name").text;
        if (accept_op("::"))
        {
            MethodSignature sig;
            sig.name = expect_ident("method name").text;
            expect_op("(");
            if (!peek().is_op(")"))
            {
                do
                {
                    Param p;
                    p.name = expect_ident("parameter name").text;
                    expect_op(":");
                    p.type = type_name();
                    sig.params.push_back(std::move(p));
                } while (accept_op(","));
            }
            expect_op(")");
            if (accept_op(":"))
                sig.return_type = type_name();
            decl.method = std::move(sig);
        }
        decl.origin = span_from(kw);
        while (peek().is_keyword("inv") || peek().is_keyword("pre") || peek().is_keyword("post"))
            decl.clauses.push_back(clause());
        if (decl.clauses.empty())
            throw SyntaxError(peek().span, "expected 'inv', 'pre' or 'post' clause, found " + describe(peek()));
        return decl;
    }

    std::string type_name()
    {
        std::string name = expect_ident("type name").text;
        if (accept_op("("))
        {
            name += "(" + type_name() + ")";
            expect_op(")");
        }
        return name;
    }

    Clause clause()
    {
        const Token &kw = take();
        Clause c;
        c.kind = kw.text == "inv" ? ClauseKind::Inv : kw.text == "pre" ? ClauseKind::Pre : ClauseKind::Post;
        if (peek().kind == TokenKind::Identifier && peek(1).is_op(":"))
            c.label = take().text;
        expect_op(":");
        c.expr = expression();
        c.origin = span_from(kw);
        const Token &next = peek();
        if (!(next.kind == TokenKind::EndOfInput || next.is_keyword("inv") || next.is_keyword("pre") ||
              next.is_keyword("post") || next.is_keyword("context")))
            throw SyntaxError(next.span, "unexpected " + describe(next) + " after clause expression");
        return c;
    }

    // ---- expressions ----------------------------------------------------

    ExprPtr expression() { return implies_expr(); }

    template <typename Next>
    ExprPtr left_assoc(Next next, std::string_view keyword, BinaryOp op)
    {
        const Token &start = peek();
        auto lhs = (this->*next)();
        while (accept_keyword(keyword))
        {
            auto rhs = (this->*next)();
            lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)}, span_from(start));
        }
        return lhs;
    }

    ExprPtr implies_expr() { return left_assoc(&Parser::xor_expr, "implies", BinaryOp::Implies); }
    ExprPtr xor_expr() { return left_assoc(&Parser::or_expr, "xor", BinaryOp::Xor); }
    ExprPtr or_expr() { return left_assoc(&Parser::and_expr, "or", BinaryOp::Or); }
    ExprPtr and_expr() { return left_assoc(&Parser::relational, "and", BinaryOp::And); }

    std::optional<BinaryOp> relational_op(const Token &t) const
    {
        if (t.kind != TokenKind::Operator)
            return std::nullopt;
        if (t.text == "=")
            return BinaryOp::Eq;
        if (t.text == "<>")
            return BinaryOp::Ne;
        if (t.text == "<")
            return BinaryOp::Lt;
        if (t.text == "<=")
            return BinaryOp::Le;
        if (t.text == ">")
            return BinaryOp::Gt;
        if (t.text == ">=")
            return BinaryOp::Ge;
        return std::nullopt;
    }

    ExprPtr relational()
    {
        const Token &start = peek();
        auto lhs = additive();
        if (auto op = relational_op(peek()))
        {
            take();
            auto rhs = additive();
            lhs = make_expr(Binary{*op, std::move(lhs), std::move(rhs)}, span_from(start));
            if (relational_op(peek()))
                throw SyntaxError(peek().span, "relational operators do not chain; add parentheses");
        }
        return lhs;
    }

    ExprPtr additive()
    {
        const Token &start = peek();
        auto lhs = multiplicative();
        for (;;)
        {
            BinaryOp op;
            if (peek().is(TokenKind::Operator, "+"))
                op = BinaryOp::Add;
            else if (peek().is(TokenKind::Operator, "-"))
                op = BinaryOp::Sub;
            else
                break;
            take();
            auto rhs = multiplicative();
            lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)}, span_from(start));
        }
        return lhs;
    }

    ExprPtr multiplicative()
    {
        const Token &start = peek();
        auto lhs = unary();
        for (;;)
        {
            BinaryOp op;
            if (peek().is(TokenKind::Operator, "*"))
                op = BinaryOp::Mul;
            else if (peek().is(TokenKind::Operator, "/"))
                op = BinaryOp::Div;
            else
                break;
            take();
            auto rhs = unary();
            lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)}, span_from(start));
        }
        return lhs;
    }

    ExprPtr unary()
    {
        const Token &start = peek();
        if (accept_keyword("not"))
        {
            auto operand = unary();
            return make_expr(Unary{UnaryOp::Not, std::move(operand)}, span_from(start));
        }
        if (peek().is(TokenKind::Operator, "-"))
        {
            take();
            auto operand = unary();
            return make_expr(Unary{UnaryOp::Negate, std::move(operand)}, span_from(start));
        }
        return postfix();
    }

    std::vector<ExprPtr> call_args()
    {
        std::vector<ExprPtr> args;
        expect_op("(");
        if (!peek().is_op(")"))
        {
            do
                args.push_back(expression());
            while (accept_op(","));
        }
        expect_op(")");
        return args;
    }

    // Name ['@pre'] ['(' args ')'] following an optional receiver.
    ExprPtr navigation(const Token &start, ExprPtr receiver)
    {
        const Token &name = expect_ident("name");
        const bool at_pre = peek().kind == TokenKind::AtPreSuffix;
        if (at_pre)
            take();
        ExprPtr nav;
        if (peek().is_op("("))
        {
            auto args = call_args();
            nav = make_expr(Call{std::move(receiver), name.text, std::move(args)}, span_from(start));
        }
        else if (receiver)
            nav = make_expr(FieldAccess{std::move(receiver), name.text}, span_from(start));
        else
            nav = make_expr(Ident{name.text}, span_from(start));
        if (at_pre)
        {
            nav = make_expr(AtPre{std::move(nav)}, span_from(start));
            if (peek().kind == TokenKind::AtPreSuffix)
                throw SyntaxError(peek().span, "'@pre' may not be repeated");
        }
        return nav;
    }

    ExprPtr postfix()
    {
        const Token &start = peek();
        auto e = primary();
        for (;;)
        {
            if (accept_op("."))
                e = navigation(start, std::move(e));
            else if (peek().is(TokenKind::Operator, "->"))
            {
                take();
                e = collection_op(start, std::move(e));
            }
            else if (peek().kind == TokenKind::AtPreSuffix)
                throw SyntaxError(peek().span, "'@pre' must follow a name");
            else
                break;
        }
        return e;
    }

    ExprPtr collection_op(const Token &start, ExprPtr receiver)
    {
        const Token &name = expect_ident("collection operation");
        const auto kind = collection_op_from_name(name.text);
        if (!kind)
            throw SyntaxError(name.span, "unknown collection operation '" + name.text + "'");
        CollectionOp op;
        op.receiver = std::move(receiver);
        op.op = *kind;
        expect_op("(");
        switch (*kind)
        {
        case CollectionOpKind::ForAll:
        case CollectionOpKind::Exists:
            op.binder = expect_ident("iterator variable").text;
            expect_op("|");
            op.args.push_back(expression());
            break;
        case CollectionOpKind::Includes:
        case CollectionOpKind::At:
            op.args.push_back(expression());
            break;
        default:
            break;
        }
        expect_op(")");
        return make_expr(std::move(op), span_from(start));
    }

    ExprPtr primary()
    {
        const Token &t = peek();
        switch (t.kind)
        {
        case TokenKind::IntegerLiteral:
            take();
            return make_expr(IntLit{std::strtoll(t.text.c_str(), nullptr, 10)}, t.span);
        case TokenKind::RealLiteral:
            take();
            return make_expr(RealLit{std::strtod(t.text.c_str(), nullptr)}, t.span);
        case TokenKind::StringLiteral:
            take();
            return make_expr(StrLit{t.text}, t.span);
        case TokenKind::BooleanLiteral:
            take();
            return make_expr(BoolLit{t.text == "true"}, t.span);
        case TokenKind::Identifier:
            return navigation(t, nullptr);
        case TokenKind::Keyword:
            if (t.text == "self")
            {
                take();
                return make_expr(SelfRef{}, t.span);
            }
            if (t.text == "result")
            {
                take();
                return make_expr(ResultRef{}, t.span);
            }
            break;
        case TokenKind::Punctuation:
            if (t.text == "(")
            {
                take();
                auto inner = expression();
                expect_op(")");
                return inner;
            }
            break;
        default:
            break;
        }
        throw SyntaxError(t.span, "expected expression, found " + describe(t));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

ExprPtr parse_expression(std::string_view source)
{
    return Parser(tokenize(source)).expression_only();
}

ConstraintFile parse_constraint_file(std::string_view source, std::string source_name)
{
    auto file = Parser(tokenize(source)).file(std::move(source_name));
    std::vector<Diagnostic> diags;
    for (const auto &decl : file.decls)
        for (const auto &clause : decl.clauses)
        {
            auto d = validate_clause(clause, decl);
            diags.insert(diags.end(), d.begin(), d.end());
        }
    if (!diags.empty())
        throw ConstraintFileError(std::move(diags));
    return file;
}

} // namespace ocl
