#pragma once

#include "ocl/token.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ocl
{

struct Expr;

// Nodes are immutable once built and shared freely; analyses that need to
// refer back to a particular occurrence key on the node address.
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryOp
{
    Not,
    Negate,
};

enum class BinaryOp
{
    And,
    Or,
    Xor,
    Implies,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
};

enum class CollectionOpKind
{
    Size,
    IsEmpty,
    NotEmpty,
    Includes,
    At,
    ForAll,
    Exists,
};

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);
std::string_view to_string(CollectionOpKind op);
std::optional<CollectionOpKind> collection_op_from_name(std::string_view name);

struct IntLit
{
    std::int64_t value = 0;
};

struct RealLit
{
    double value = 0.0;
};

struct StrLit
{
    std::string value;
};

struct BoolLit
{
    bool value = false;
};

struct SelfRef
{
};

struct ResultRef
{
};

struct Ident
{
    std::string name;
};

// A missing receiver means the implicit `self`.
struct Call
{
    ExprPtr receiver;
    std::string method;
    std::vector<ExprPtr> args;
};

struct FieldAccess
{
    ExprPtr receiver;
    std::string field;
};

// Marks the wrapped navigation (Ident, FieldAccess or Call) as an entry-time value.
struct AtPre
{
    ExprPtr inner;
};

struct Unary
{
    UnaryOp op = UnaryOp::Not;
    ExprPtr operand;
};

struct Binary
{
    BinaryOp op = BinaryOp::And;
    ExprPtr lhs;
    ExprPtr rhs;
};

// forAll/exists carry a binder and a single body in `args`; includes/at carry
// one argument; the remaining operations carry none.
struct CollectionOp
{
    ExprPtr receiver;
    CollectionOpKind op = CollectionOpKind::Size;
    std::optional<std::string> binder;
    std::vector<ExprPtr> args;
};

using ExprNode = std::variant<IntLit, RealLit, StrLit, BoolLit, SelfRef, ResultRef, Ident, Call, FieldAccess,
                              AtPre, Unary, Binary, CollectionOp>;

struct Expr
{
    ExprNode node;
    SourceSpan span;

    template <typename T> const T *as() const noexcept { return std::get_if<T>(&node); }
    template <typename T> bool is() const noexcept { return std::holds_alternative<T>(node); }
};

template <typename Node> ExprPtr make_expr(Node node, SourceSpan span = {})
{
    return std::make_shared<const Expr>(Expr{ExprNode{std::move(node)}, span});
}

/// Structural equality: same node kinds, operators, names and literal values,
/// recursively. Spans are ignored.
bool same_structure(const Expr &a, const Expr &b);

/// Postfix navigation nodes: Ident, Call, FieldAccess, AtPre, CollectionOp.
bool is_postfix(const Expr &e);

/// For a postfix node, the receiver it navigates from (nullptr for Ident,
/// implicit-self calls and non-postfix nodes).
const Expr *spine_child(const Expr &e);

/// True if the receiver spine starting at `e` contains an AtPre marker.
bool spine_has_at_pre(const Expr &e);

/// Calls `fn` on every direct child of `e`, left to right.
template <typename Fn> void for_each_child(const Expr &e, Fn &&fn)
{
    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Call>)
            {
                if (n.receiver)
                    fn(*n.receiver);
                for (const auto &a : n.args)
                    fn(*a);
            }
            else if constexpr (std::is_same_v<N, FieldAccess>)
            {
                if (n.receiver)
                    fn(*n.receiver);
            }
            else if constexpr (std::is_same_v<N, AtPre>)
                fn(*n.inner);
            else if constexpr (std::is_same_v<N, Unary>)
                fn(*n.operand);
            else if constexpr (std::is_same_v<N, Binary>)
            {
                fn(*n.lhs);
                fn(*n.rhs);
            }
            else if constexpr (std::is_same_v<N, CollectionOp>)
            {
                fn(*n.receiver);
                for (const auto &a : n.args)
                    fn(*a);
            }
        },
        e.node);
}

enum class ClauseKind
{
    Inv,
    Pre,
    Post,
};

std::string_view to_string(ClauseKind kind);

struct Clause
{
    ClauseKind kind = ClauseKind::Inv;
    std::optional<std::string> label;
    ExprPtr expr;
    SourceSpan origin;
};

struct Param
{
    std::string name;
    std::string type;
};

struct MethodSignature
{
    std::string name;
    std::vector<Param> params;
    std::optional<std::string> return_type;
};

struct ContextDecl
{
    std::string class_name;
    std::optional<MethodSignature> method;
    std::vector<Clause> clauses;
    SourceSpan origin;

    bool has_param(std::string_view name) const;
    std::string key() const;
};

struct ConstraintFile
{
    std::vector<ContextDecl> decls;
    std::string source_name;
};

} // namespace ocl
