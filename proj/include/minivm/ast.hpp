#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace minivm
{

/// Front-end error (syntax or program structure) with a source position.
class ProgramError : public std::runtime_error
{
  public:
    ProgramError(int line, int column, const std::string &msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
          column_(column), msg_(msg)
    {
    }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string &message() const noexcept { return msg_; }

  private:
    int line_;
    int column_;
    std::string msg_;
};

enum class Visibility
{
    Public,
    Private,
};

const char *to_string(Visibility v);

struct Expr;
using ExprP = std::shared_ptr<const Expr>;
struct Stmt;
using StmtP = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtP>;

struct IntLit
{
    std::int64_t value;
};
struct RealLit
{
    double value;
};
struct StrLit
{
    std::string value;
};
struct BoolLit
{
    bool value;
};
struct NullLit
{
};
struct SelfExpr
{
};
struct NameExpr
{
    std::string name;
};
struct NewExpr
{
    std::string cls;
    std::vector<ExprP> args;
};
// receiver == nullptr: implicit self or a built-in function (seq, print, fail).
struct CallExpr
{
    ExprP receiver;
    std::string method;
    std::vector<ExprP> args;
};
struct FieldExpr
{
    ExprP receiver;
    std::string field;
};

enum class UnOp
{
    Not,
    Neg,
};
enum class BinOp
{
    Or,
    And,
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
    Mod,
};

struct UnaryExpr
{
    UnOp op;
    ExprP operand;
};
struct BinaryExpr
{
    BinOp op;
    ExprP lhs;
    ExprP rhs;
};

struct Expr
{
    std::variant<IntLit, RealLit, StrLit, BoolLit, NullLit, SelfExpr, NameExpr, NewExpr, CallExpr, FieldExpr,
                 UnaryExpr, BinaryExpr>
        node;
    int line = 0;
    int column = 0;

    template <typename T> const T *as() const noexcept { return std::get_if<T>(&node); }
};

// target is a NameExpr or FieldExpr.
struct AssignStmt
{
    ExprP target;
    ExprP value;
};
struct IfStmt
{
    ExprP cond;
    Block then_block;
    Block else_block;
};
struct WhileStmt
{
    ExprP cond;
    Block body;
};
struct ReturnStmt
{
    ExprP value; // may be null
};
struct ExprStmt
{
    ExprP expr;
};

struct Stmt
{
    std::variant<AssignStmt, IfStmt, WhileStmt, ReturnStmt, ExprStmt> node;
    int line = 0;

    template <typename T> const T *as() const noexcept { return std::get_if<T>(&node); }
};

struct FieldDef
{
    std::string name;
    Visibility visibility = Visibility::Public;
    int line = 0;
};

struct MethodDef
{
    std::string name;
    std::vector<std::string> params;
    bool pure = false;
    Visibility visibility = Visibility::Public;
    Block body;
    int line = 0;
};

struct ClassDef
{
    std::string name;
    std::optional<std::string> base;
    std::vector<std::string> interfaces;
    std::vector<FieldDef> fields;
    std::vector<MethodDef> methods; // includes init when declared
    int line = 0;

    const MethodDef *constructor() const;
};

struct MethodSig
{
    std::string name;
    std::vector<std::string> params;
    bool pure = false;
    int line = 0;
};

struct InterfaceDef
{
    std::string name;
    std::vector<std::string> extends;
    std::vector<MethodSig> methods;
    int line = 0;
};

struct Program
{
    std::vector<ClassDef> classes;
    std::vector<InterfaceDef> interfaces;
    Block main_body;
    int main_line = 0;
};

} // namespace minivm
