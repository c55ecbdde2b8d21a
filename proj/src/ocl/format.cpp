#include "ocl/format.hpp"

#include <charconv>
#include <cmath>

namespace ocl
{

namespace
{

// Binding strength, weakest first. Postfix chains and literals bind tightest.
enum Prec : int
{
    PImplies = 1,
    PXor,
    POr,
    PAnd,
    PRel,
    PAdd,
    PMul,
    PUnary,
    PPostfix,
};

int binary_prec(BinaryOp op)
{
    switch (op)
    {
    case BinaryOp::Implies:
        return PImplies;
    case BinaryOp::Xor:
        return PXor;
    case BinaryOp::Or:
        return POr;
    case BinaryOp::And:
        return PAnd;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
        return PRel;
    case BinaryOp::Add:
    case BinaryOp::Sub:
        return PAdd;
    case BinaryOp::Mul:
    case BinaryOp::Div:
        return PMul;
    }
    return PPostfix;
}

int prec_of(const Expr &e)
{
    if (const auto *b = e.as<Binary>())
        return binary_prec(b->op);
    if (e.is<Unary>())
        return PUnary;
    return PPostfix;
}

std::string quote(const std::string &s)
{
    std::string out = "'";
    for (char c : s)
    {
        switch (c)
        {
        case '\'':
            out += "\\'";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            out += c;
        }
    }
    return out + "'";
}

void emit(const Expr &e, std::string &out);

// Emits `e`, parenthesized if it binds looser than `min_prec`.
void emit_at(const Expr &e, int min_prec, std::string &out)
{
    if (prec_of(e) < min_prec)
    {
        out += '(';
        emit(e, out);
        out += ')';
    }
    else
        emit(e, out);
}

void emit_args(const std::vector<ExprPtr> &args, std::string &out)
{
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (i > 0)
            out += ", ";
        emit(*args[i], out);
    }
    out += ')';
}

void emit_receiver(const ExprPtr &receiver, std::string &out)
{
    if (!receiver)
        return;
    emit_at(*receiver, PPostfix, out);
    out += '.';
}

void emit(const Expr &e, std::string &out)
{
    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, IntLit>)
                out += std::to_string(n.value);
            else if constexpr (std::is_same_v<N, RealLit>)
                out += format_real(n.value);
            else if constexpr (std::is_same_v<N, StrLit>)
                out += quote(n.value);
            else if constexpr (std::is_same_v<N, BoolLit>)
                out += n.value ? "true" : "false";
            else if constexpr (std::is_same_v<N, SelfRef>)
                out += "self";
            else if constexpr (std::is_same_v<N, ResultRef>)
                out += "result";
            else if constexpr (std::is_same_v<N, Ident>)
                out += n.name;
            else if constexpr (std::is_same_v<N, Call>)
            {
                emit_receiver(n.receiver, out);
                out += n.method;
                emit_args(n.args, out);
            }
            else if constexpr (std::is_same_v<N, FieldAccess>)
            {
                emit_receiver(n.receiver, out);
                out += n.field;
            }
            else if constexpr (std::is_same_v<N, AtPre>)
            {
                const Expr &inner = *n.inner;
                if (const auto *c = inner.as<Call>())
                {
                    emit_receiver(c->receiver, out);
                    out += c->method;
                    out += "@pre";
                    emit_args(c->args, out);
                }
                else
                {
                    emit(inner, out);
                    out += "@pre";
                }
            }
            else if constexpr (std::is_same_v<N, Unary>)
            {
                if (n.op == UnaryOp::Not)
                    out += "not ";
                else
                    out += '-';
                std::string operand;
                emit_at(*n.operand, PUnary, operand);
                // "--" would open a comment.
                if (n.op == UnaryOp::Negate && !operand.empty() && operand.front() == '-')
                    out += ' ';
                out += operand;
            }
            else if constexpr (std::is_same_v<N, Binary>)
            {
                const int p = binary_prec(n.op);
                // Left-associative levels accept an equal-precedence left child;
                // relational operators accept neither side at their own level.
                emit_at(*n.lhs, p == PRel ? p + 1 : p, out);
                out += ' ';
                out += to_string(n.op);
                out += ' ';
                emit_at(*n.rhs, p + 1, out);
            }
            else if constexpr (std::is_same_v<N, CollectionOp>)
            {
                emit_at(*n.receiver, PPostfix, out);
                out += "->";
                out += to_string(n.op);
                out += '(';
                if (n.binder)
                {
                    out += *n.binder;
                    out += " | ";
                }
                for (std::size_t i = 0; i < n.args.size(); ++i)
                {
                    if (i > 0)
                        out += ", ";
                    emit(*n.args[i], out);
                }
                out += ')';
            }
        },
        e.node);
}

} // namespace

std::string format_real(double value)
{
    if (!std::isfinite(value))
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string s(buf, end);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

std::string format_expr(const Expr &e)
{
    std::string out;
    emit(e, out);
    return out;
}

} // namespace ocl
