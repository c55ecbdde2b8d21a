#include "minivm/parser.hpp"

#include "minivm/classes.hpp"
#include "minivm/lexer.hpp"

#include <charconv>
#include <set>

namespace minivm
{

const char *to_string(Visibility v)
{
    return v == Visibility::Public ? "public" : "private";
}

const MethodDef *ClassDef::constructor() const
{
    for (const auto &m : methods)
        if (m.name == "init")
            return &m;
    return nullptr;
}

namespace
{

class Parser
{
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program()
    {
        Program p;
        bool have_main = false;
        std::set<std::string> type_names;
        while (!peek().is(Tok::End, ""))
        {
            const auto &t = peek();
            if (t.kw("class"))
            {
                auto c = class_def();
                if (!type_names.insert(c.name).second)
                    throw ProgramError(c.line, 1, "duplicate class " + c.name);
                p.classes.push_back(std::move(c));
            }
            else if (t.kw("interface"))
            {
                auto i = interface_def();
                if (!type_names.insert(i.name).second)
                    throw ProgramError(i.line, 1, "duplicate class " + i.name);
                p.interfaces.push_back(std::move(i));
            }
            else if (t.kw("main"))
            {
                if (have_main)
                    fail(t, "duplicate main block");
                have_main = true;
                p.main_line = next().line;
                p.main_body = block();
            }
            else
                fail(t, "expected class, interface or main");
        }
        if (!have_main)
            throw ProgramError(peek().line, peek().column, "missing main block");
        return p;
    }

  private:
    const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token &next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const Token &t, const std::string &msg) const
    {
        throw ProgramError(t.line, t.column, msg + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
    }

    const Token &expect_op(std::string_view op)
    {
        if (!peek().op(op))
            fail(peek(), "expected '" + std::string(op) + "'");
        return next();
    }

    std::string ident(const char *what)
    {
        if (peek().kind != Tok::Ident)
            fail(peek(), std::string("expected ") + what);
        return next().text;
    }

    bool accept_op(std::string_view op)
    {
        if (peek().op(op))
        {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_kw(std::string_view kw)
    {
        if (peek().kw(kw))
        {
            ++pos_;
            return true;
        }
        return false;
    }

    std::vector<std::string> params()
    {
        std::vector<std::string> out;
        expect_op("(");
        if (!peek().op(")"))
        {
            do
            {
                const auto &t = peek();
                auto name = ident("parameter name");
                for (const auto &p : out)
                    if (p == name)
                        fail(t, "duplicate parameter " + name);
                out.push_back(name);
            } while (accept_op(","));
        }
        expect_op(")");
        return out;
    }

    ClassDef class_def()
    {
        ClassDef c;
        c.line = next().line;
        c.name = ident("class name");
        if (accept_kw("extends"))
            c.base = ident("base class name");
        if (accept_kw("implements"))
        {
            do
                c.interfaces.push_back(ident("interface name"));
            while (accept_op(","));
        }
        expect_op("{");
        std::set<std::string> members;
        while (!accept_op("}"))
        {
            const Token &start = peek();
            Visibility vis = Visibility::Public;
            if (accept_kw("private"))
                vis = Visibility::Private;
            else
                accept_kw("public");
            if (accept_kw("var"))
            {
                FieldDef f{ident("field name"), vis, start.line};
                expect_op(";");
                if (!members.insert("var " + f.name).second)
                    throw ProgramError(start.line, start.column, "duplicate field " + f.name + " in " + c.name);
                c.fields.push_back(std::move(f));
                continue;
            }
            MethodDef m;
            m.visibility = vis;
            m.pure = accept_kw("pure");
            if (!accept_kw("def"))
                fail(peek(), "expected 'var' or 'def'");
            m.line = start.line;
            m.name = ident("method name");
            m.params = params();
            m.body = block();
            if (!members.insert("def " + m.name).second)
                throw ProgramError(start.line, start.column, "duplicate method " + m.name + " in " + c.name);
            c.methods.push_back(std::move(m));
        }
        return c;
    }

    InterfaceDef interface_def()
    {
        InterfaceDef i;
        i.line = next().line;
        i.name = ident("interface name");
        if (accept_kw("extends"))
        {
            do
                i.extends.push_back(ident("interface name"));
            while (accept_op(","));
        }
        expect_op("{");
        while (!accept_op("}"))
        {
            MethodSig s;
            s.line = peek().line;
            accept_kw("public");
            s.pure = accept_kw("pure");
            if (!accept_kw("def"))
                fail(peek(), "expected 'def'");
            s.name = ident("method name");
            s.params = params();
            expect_op(";");
            i.methods.push_back(std::move(s));
        }
        return i;
    }

    Block block()
    {
        expect_op("{");
        Block b;
        while (!accept_op("}"))
            b.push_back(statement());
        return b;
    }

    template <typename N> StmtP make_stmt(N n, int line) { return std::make_shared<const Stmt>(Stmt{std::move(n), line}); }

    StmtP statement()
    {
        const Token &t = peek();
        if (accept_kw("if"))
        {
            expect_op("(");
            auto cond = expr();
            expect_op(")");
            IfStmt s{cond, block(), {}};
            if (accept_kw("else"))
            {
                if (peek().kw("if"))
                    s.else_block.push_back(statement());
                else
                    s.else_block = block();
            }
            return make_stmt(std::move(s), t.line);
        }
        if (accept_kw("while"))
        {
            expect_op("(");
            auto cond = expr();
            expect_op(")");
            return make_stmt(WhileStmt{cond, block()}, t.line);
        }
        if (accept_kw("return"))
        {
            ExprP value;
            if (!peek().op(";"))
                value = expr();
            expect_op(";");
            return make_stmt(ReturnStmt{value}, t.line);
        }
        auto e = expr();
        if (accept_op("="))
        {
            if (!e->as<NameExpr>() && !e->as<FieldExpr>())
                fail(t, "cannot assign to this expression");
            auto value = expr();
            expect_op(";");
            return make_stmt(AssignStmt{e, value}, t.line);
        }
        expect_op(";");
        return make_stmt(ExprStmt{e}, t.line);
    }

    template <typename N> ExprP make(N n, const Token &at)
    {
        return std::make_shared<const Expr>(Expr{std::move(n), at.line, at.column});
    }

    ExprP expr() { return binary(0); }

    // Levels, loosest first.
    static int level_of(const Token &t, BinOp &op)
    {
        if (t.kind != Tok::Op)
            return -1;
        static const std::pair<const char *, std::pair<int, BinOp>> table[] = {
            {"||", {0, BinOp::Or}},  {"&&", {1, BinOp::And}}, {"==", {2, BinOp::Eq}},  {"!=", {2, BinOp::Ne}},
            {"<", {3, BinOp::Lt}},   {"<=", {3, BinOp::Le}},  {">", {3, BinOp::Gt}},   {">=", {3, BinOp::Ge}},
            {"+", {4, BinOp::Add}},  {"-", {4, BinOp::Sub}},  {"*", {5, BinOp::Mul}},  {"/", {5, BinOp::Div}},
            {"%", {5, BinOp::Mod}},
        };
        for (const auto &[text, lv] : table)
            if (t.text == text)
            {
                op = lv.second;
                return lv.first;
            }
        return -1;
    }

    ExprP binary(int min_level)
    {
        if (min_level > 5)
            return unary();
        auto lhs = binary(min_level + 1);
        for (;;)
        {
            BinOp op = BinOp::Or;
            const Token &t = peek();
            if (level_of(t, op) != min_level)
                return lhs;
            ++pos_;
            auto rhs = binary(min_level + 1);
            lhs = make(BinaryExpr{op, lhs, rhs}, t);
        }
    }

    ExprP unary()
    {
        const Token &t = peek();
        if (accept_op("!"))
            return make(UnaryExpr{UnOp::Not, unary()}, t);
        if (accept_op("-"))
            return make(UnaryExpr{UnOp::Neg, unary()}, t);
        return postfix();
    }

    std::vector<ExprP> args()
    {
        std::vector<ExprP> out;
        expect_op("(");
        if (!peek().op(")"))
        {
            do
                out.push_back(expr());
            while (accept_op(","));
        }
        expect_op(")");
        return out;
    }

    ExprP postfix()
    {
        auto e = primary();
        while (peek().op("."))
        {
            const Token &dot = next();
            auto name = ident("member name");
            if (peek().op("("))
                e = make(CallExpr{e, name, args()}, dot);
            else
                e = make(FieldExpr{e, name}, dot);
        }
        return e;
    }

    ExprP primary()
    {
        const Token &t = peek();
        switch (t.kind)
        {
        case Tok::Int: {
            ++pos_;
            std::int64_t v = 0;
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            return make(IntLit{v}, t);
        }
        case Tok::Real:
            ++pos_;
            return make(RealLit{std::stod(t.text)}, t);
        case Tok::Str:
            ++pos_;
            return make(StrLit{t.text}, t);
        case Tok::Ident: {
            ++pos_;
            if (peek().op("("))
                return make(CallExpr{nullptr, t.text, args()}, t);
            return make(NameExpr{t.text}, t);
        }
        case Tok::Keyword:
            if (accept_kw("true"))
                return make(BoolLit{true}, t);
            if (accept_kw("false"))
                return make(BoolLit{false}, t);
            if (accept_kw("null"))
                return make(NullLit{}, t);
            if (accept_kw("self"))
                return make(SelfExpr{}, t);
            if (accept_kw("new"))
            {
                auto cls = ident("class name");
                return make(NewExpr{cls, args()}, t);
            }
            break;
        case Tok::Op:
            if (accept_op("("))
            {
                auto e = expr();
                expect_op(")");
                return e;
            }
            break;
        case Tok::End:
            break;
        }
        fail(t, "expected an expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Program parse_program(std::string_view source)
{
    Program p = Parser(lex(source)).program();
    ClassTable::build(p); // structural checks only
    return p;
}

} // namespace minivm
