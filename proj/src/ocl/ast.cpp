#include "ocl/ast.hpp"

#include <array>
#include <utility>

namespace ocl
{

std::string to_string(const SourceSpan &span)
{
    return std::to_string(span.line) + ":" + std::to_string(span.column);
}

std::string_view to_string(TokenKind kind)
{
    switch (kind)
    {
    case TokenKind::Keyword:
        return "keyword";
    case TokenKind::Identifier:
        return "identifier";
    case TokenKind::IntegerLiteral:
        return "integer-literal";
    case TokenKind::RealLiteral:
        return "real-literal";
    case TokenKind::StringLiteral:
        return "string-literal";
    case TokenKind::BooleanLiteral:
        return "boolean-literal";
    case TokenKind::Operator:
        return "operator";
    case TokenKind::Punctuation:
        return "punctuation";
    case TokenKind::AtPreSuffix:
        return "at-pre-suffix";
    case TokenKind::EndOfInput:
        return "end-of-input";
    }
    return "?";
}

SyntaxError::SyntaxError(SourceSpan span, const std::string &message)
    : std::runtime_error(to_string(span) + ": " + message), span_(span), message_(message)
{
}

std::string_view to_string(UnaryOp op)
{
    return op == UnaryOp::Not ? "not" : "-";
}

std::string_view to_string(BinaryOp op)
{
    switch (op)
    {
    case BinaryOp::And:
        return "and";
    case BinaryOp::Or:
        return "or";
    case BinaryOp::Xor:
        return "xor";
    case BinaryOp::Implies:
        return "implies";
    case BinaryOp::Eq:
        return "=";
    case BinaryOp::Ne:
        return "<>";
    case BinaryOp::Lt:
        return "<";
    case BinaryOp::Le:
        return "<=";
    case BinaryOp::Gt:
        return ">";
    case BinaryOp::Ge:
        return ">=";
    case BinaryOp::Add:
        return "+";
    case BinaryOp::Sub:
        return "-";
    case BinaryOp::Mul:
        return "*";
    case BinaryOp::Div:
        return "/";
    }
    return "?";
}

namespace
{
constexpr std::array<std::pair<CollectionOpKind, std::string_view>, 7> collectionOpNames{{
    {CollectionOpKind::Size, "size"},
    {CollectionOpKind::IsEmpty, "isEmpty"},
    {CollectionOpKind::NotEmpty, "notEmpty"},
    {CollectionOpKind::Includes, "includes"},
    {CollectionOpKind::At, "at"},
    {CollectionOpKind::ForAll, "forAll"},
    {CollectionOpKind::Exists, "exists"},
}};
} // namespace

std::string_view to_string(CollectionOpKind op)
{
    for (const auto &[kind, name] : collectionOpNames)
        if (kind == op)
            return name;
    return "?";
}

std::optional<CollectionOpKind> collection_op_from_name(std::string_view name)
{
    for (const auto &[kind, n] : collectionOpNames)
        if (n == name)
            return kind;
    return std::nullopt;
}

std::string_view to_string(ClauseKind kind)
{
    switch (kind)
    {
    case ClauseKind::Inv:
        return "inv";
    case ClauseKind::Pre:
        return "pre";
    case ClauseKind::Post:
        return "post";
    }
    return "?";
}

namespace
{

bool same_ptr(const ExprPtr &a, const ExprPtr &b)
{
    if (!a || !b)
        return !a && !b;
    return same_structure(*a, *b);
}

bool same_list(const std::vector<ExprPtr> &a, const std::vector<ExprPtr> &b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_ptr(a[i], b[i]))
            return false;
    return true;
}

} // namespace

bool same_structure(const Expr &a, const Expr &b)
{
    if (a.node.index() != b.node.index())
        return false;
    return std::visit(
        [&](const auto &x) -> bool {
            using N = std::decay_t<decltype(x)>;
            const auto &y = std::get<N>(b.node);
            if constexpr (std::is_same_v<N, IntLit> || std::is_same_v<N, BoolLit> || std::is_same_v<N, StrLit>)
                return x.value == y.value;
            else if constexpr (std::is_same_v<N, RealLit>)
                return x.value == y.value || (x.value != x.value && y.value != y.value);
            else if constexpr (std::is_same_v<N, SelfRef> || std::is_same_v<N, ResultRef>)
                return true;
            else if constexpr (std::is_same_v<N, Ident>)
                return x.name == y.name;
            else if constexpr (std::is_same_v<N, Call>)
                return x.method == y.method && same_ptr(x.receiver, y.receiver) && same_list(x.args, y.args);
            else if constexpr (std::is_same_v<N, FieldAccess>)
                return x.field == y.field && same_ptr(x.receiver, y.receiver);
            else if constexpr (std::is_same_v<N, AtPre>)
                return same_ptr(x.inner, y.inner);
            else if constexpr (std::is_same_v<N, Unary>)
                return x.op == y.op && same_ptr(x.operand, y.operand);
            else if constexpr (std::is_same_v<N, Binary>)
                return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
            else
                return x.op == y.op && x.binder == y.binder && same_ptr(x.receiver, y.receiver) &&
                       same_list(x.args, y.args);
        },
        a.node);
}

bool is_postfix(const Expr &e)
{
    return e.is<Ident>() || e.is<Call>() || e.is<FieldAccess>() || e.is<AtPre>() || e.is<CollectionOp>();
}

const Expr *spine_child(const Expr &e)
{
    if (const auto *c = e.as<Call>())
        return c->receiver.get();
    if (const auto *f = e.as<FieldAccess>())
        return f->receiver.get();
    if (const auto *p = e.as<AtPre>())
        return p->inner.get();
    if (const auto *c = e.as<CollectionOp>())
        return c->receiver.get();
    return nullptr;
}

bool spine_has_at_pre(const Expr &e)
{
    for (const Expr *cur = &e; cur != nullptr; cur = spine_child(*cur))
        if (cur->is<AtPre>())
            return true;
    return false;
}

bool ContextDecl::has_param(std::string_view name) const
{
    if (!method)
        return false;
    for (const auto &p : method->params)
        if (p.name == name)
            return true;
    return false;
}

std::string ContextDecl::key() const
{
    return method ? class_name + "::" + method->name : class_name;
}

} // namespace ocl
