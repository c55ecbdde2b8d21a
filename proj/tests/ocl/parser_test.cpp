#include "ocl/format.hpp"
#include "ocl/parser.hpp"

#include <gtest/gtest.h>

using namespace ocl;

namespace
{

ExprPtr ident(const std::string &n)
{
    return make_expr(Ident{n});
}

ExprPtr bin(BinaryOp op, ExprPtr l, ExprPtr r)
{
    return make_expr(Binary{op, std::move(l), std::move(r)});
}

ExprPtr call(ExprPtr recv, const std::string &m, std::vector<ExprPtr> args = {})
{
    return make_expr(Call{std::move(recv), m, std::move(args)});
}

::testing::AssertionResult same(const ExprPtr &actual, const ExprPtr &expected)
{
    if (same_structure(*actual, *expected))
        return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "got " << format_expr(*actual) << ", expected "
                                         << format_expr(*expected);
}

const char *figure2 = R"(context BoundedStack
  inv: size() >= 0      -- or equivalently self.size() >= 0
  inv: size() <= capacity()
)";

const char *figure3 = R"(
context BoundedStack::push(obj : OclAny) : OclAny
  pre: size() < capacity()
  post: size() = v@pre.size() + 1
  post: v.last() = obj
  post: result = v.last()

context BoundedStack::pop() : OclAny
  pre: not empty()
  post: result = v@pre.last()
  post: size() = v@pre.size() - 1

context BoundedStack::peek() : OclAny
  pre: not empty()
  post: result = v.last()
  post: v = v@pre

context BoundedStack::empty() : Boolean
  post: result = (v.size() = 0)

context BoundedStack::size() : Integer
  post: result = v.size()

context BoundedStack::capacity() : Integer
  post: result = cap
)";

} // namespace

TEST(ParseExpression, OrBindsLooserThanAnd)
{
    EXPECT_TRUE(same(parse_expression("a or b and c"),
                     bin(BinaryOp::Or, ident("a"), bin(BinaryOp::And, ident("b"), ident("c")))));
}

TEST(ParseExpression, NotEmpty)
{
    auto e = parse_expression("not empty()");
    EXPECT_TRUE(same(e, make_expr(Unary{UnaryOp::Not, call(nullptr, "empty")})));
}

TEST(ParseExpression, ImplicitSelfMatchesExplicitSelf)
{
    auto implicit = parse_expression("size() >= 0");
    auto explicit_self = parse_expression("self.size() >= 0");
    const auto &bi = *implicit->as<Binary>();
    const auto &be = *explicit_self->as<Binary>();
    EXPECT_EQ(bi.op, be.op);
    EXPECT_TRUE(same_structure(*bi.rhs, *be.rhs));
    const auto *ci = bi.lhs->as<Call>();
    const auto *ce = be.lhs->as<Call>();
    ASSERT_TRUE(ci && ce);
    EXPECT_EQ(ci->method, ce->method);
    EXPECT_EQ(ci->receiver, nullptr);
    ASSERT_NE(ce->receiver, nullptr);
    EXPECT_TRUE(ce->receiver->is<SelfRef>());
}

TEST(ParseExpression, PrecedenceLadder)
{
    // implies < xor < or < and < relational < additive < multiplicative < unary
    auto e = parse_expression("a implies b xor c or d and e = f + g * -h");
    auto expected = bin(
        BinaryOp::Implies, ident("a"),
        bin(BinaryOp::Xor, ident("b"),
            bin(BinaryOp::Or, ident("c"),
                bin(BinaryOp::And, ident("d"),
                    bin(BinaryOp::Eq, ident("e"),
                        bin(BinaryOp::Add, ident("f"),
                            bin(BinaryOp::Mul, ident("g"), make_expr(Unary{UnaryOp::Negate, ident("h")}))))))));
    EXPECT_TRUE(same(e, expected));
}

TEST(ParseExpression, LeftAssociativity)
{
    EXPECT_TRUE(same(parse_expression("a - b - c"),
                     bin(BinaryOp::Sub, bin(BinaryOp::Sub, ident("a"), ident("b")), ident("c"))));
    EXPECT_TRUE(same(parse_expression("a implies b implies c"),
                     bin(BinaryOp::Implies, bin(BinaryOp::Implies, ident("a"), ident("b")), ident("c"))));
}

TEST(ParseExpression, UnaryBindsTighterThanRelational)
{
    EXPECT_TRUE(same(parse_expression("not a = b"),
                     bin(BinaryOp::Eq, make_expr(Unary{UnaryOp::Not, ident("a")}), ident("b"))));
}

TEST(ParseExpression, ChainedRelationalsRejected)
{
    EXPECT_THROW(parse_expression("a < b < c"), SyntaxError);
    EXPECT_THROW(parse_expression("a = b = c"), SyntaxError);
    EXPECT_NO_THROW(parse_expression("(a < b) = c"));
}

TEST(ParseExpression, AtPreForms)
{
    auto e = parse_expression("v@pre.size()");
    const auto *c = e->as<Call>();
    ASSERT_NE(c, nullptr);
    ASSERT_TRUE(c->receiver->is<AtPre>());
    EXPECT_TRUE(c->receiver->as<AtPre>()->inner->is<Ident>());

    auto op = parse_expression("size@pre()");
    ASSERT_TRUE(op->is<AtPre>());
    EXPECT_TRUE(op->as<AtPre>()->inner->is<Call>());

    auto fld = parse_expression("self.v@pre");
    ASSERT_TRUE(fld->is<AtPre>());
    EXPECT_TRUE(fld->as<AtPre>()->inner->is<FieldAccess>());
}

TEST(ParseExpression, AtPreMisuse)
{
    EXPECT_THROW(parse_expression("v@pre@pre"), SyntaxError);
    EXPECT_THROW(parse_expression("self@pre"), SyntaxError);
    EXPECT_THROW(parse_expression("result@pre"), SyntaxError);
    EXPECT_THROW(parse_expression("size()@pre"), SyntaxError);
}

TEST(ParseExpression, CollectionOperations)
{
    auto e = parse_expression("self.v->forAll(x | x >= 0)");
    const auto *c = e->as<CollectionOp>();
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->op, CollectionOpKind::ForAll);
    EXPECT_EQ(c->binder, std::optional<std::string>("x"));
    ASSERT_EQ(c->args.size(), 1u);

    EXPECT_NO_THROW(parse_expression("v->includes(3) and v->at(1) = 2 and v->isEmpty() or v->notEmpty()"));
    EXPECT_THROW(parse_expression("v->forAll(x >= 0)"), SyntaxError);
    EXPECT_THROW(parse_expression("v->collect(x | x)"), SyntaxError);
    EXPECT_THROW(parse_expression("v->size(1)"), SyntaxError);
}

TEST(ParseExpression, SyntaxErrorsCarryPosition)
{
    try
    {
        parse_expression("a +\n  * b");
        FAIL();
    }
    catch (const SyntaxError &e)
    {
        EXPECT_EQ(e.span().line, 2);
        EXPECT_EQ(e.span().column, 3);
    }
    EXPECT_THROW(parse_expression(""), SyntaxError);
    EXPECT_THROW(parse_expression("f(a,)"), SyntaxError);
    EXPECT_THROW(parse_expression("(a"), SyntaxError);
}

TEST(ParseExpression, NodeSpansCoverSource)
{
    auto e = parse_expression("size() >= 0");
    EXPECT_EQ(e->span, (SourceSpan{1, 1, 11}));
    EXPECT_EQ(e->as<Binary>()->lhs->span, (SourceSpan{1, 1, 6}));
}

TEST(ParseConstraintFile, Figure2Invariants)
{
    auto f = parse_constraint_file(figure2, "stack.ocl");
    EXPECT_EQ(f.source_name, "stack.ocl");
    ASSERT_EQ(f.decls.size(), 1u);
    EXPECT_EQ(f.decls[0].class_name, "BoundedStack");
    EXPECT_FALSE(f.decls[0].method.has_value());
    ASSERT_EQ(f.decls[0].clauses.size(), 2u);
    for (const auto &c : f.decls[0].clauses)
        EXPECT_EQ(c.kind, ClauseKind::Inv);
    EXPECT_EQ(format_expr(*f.decls[0].clauses[1].expr), "size() <= capacity()");
}

TEST(ParseConstraintFile, Figure3Contexts)
{
    auto f = parse_constraint_file(figure3);
    ASSERT_EQ(f.decls.size(), 6u);
    const auto &push = f.decls[0];
    ASSERT_TRUE(push.method.has_value());
    EXPECT_EQ(push.method->name, "push");
    ASSERT_EQ(push.method->params.size(), 1u);
    EXPECT_EQ(push.method->params[0].name, "obj");
    EXPECT_EQ(push.method->params[0].type, "OclAny");
    EXPECT_EQ(push.method->return_type, std::optional<std::string>("OclAny"));
    ASSERT_EQ(push.clauses.size(), 4u);
    EXPECT_EQ(push.clauses[0].kind, ClauseKind::Pre);
    EXPECT_EQ(push.clauses[3].kind, ClauseKind::Post);
    EXPECT_EQ(f.decls[3].method->name, "empty");
    EXPECT_EQ(format_expr(*f.decls[3].clauses[0].expr), "result = (v.size() = 0)");
}

TEST(ParseConstraintFile, EmptyFile)
{
    try
    {
        parse_constraint_file("  -- only a comment\n");
        FAIL();
    }
    catch (const SyntaxError &e)
    {
        EXPECT_NE(std::string(e.what()).find("no context declarations"), std::string::npos);
    }
}

TEST(ParseConstraintFile, ResultInPreconditionRejected)
{
    try
    {
        parse_constraint_file("context S::pop() : OclAny\n  pre: result = 1\n");
        FAIL();
    }
    catch (const ConstraintFileError &e)
    {
        ASSERT_EQ(e.diagnostics().size(), 1u);
        EXPECT_EQ(e.diagnostics()[0].message, "result not allowed in pre");
    }
}

TEST(ParseConstraintFile, AllBadClausesReported)
{
    try
    {
        parse_constraint_file("context S\n  pre: true\ncontext S::m()\n  inv: true\n  pre: x@pre = 1\n");
        FAIL();
    }
    catch (const ConstraintFileError &e)
    {
        EXPECT_EQ(e.diagnostics().size(), 3u);
    }
}

TEST(ParseConstraintFile, LabelsAndSequenceTypes)
{
    auto f = parse_constraint_file(
        "context A::f(xs : Sequence(Integer), n : Integer) : Real\n pre nonEmpty: xs->notEmpty()\n");
    ASSERT_EQ(f.decls.size(), 1u);
    EXPECT_EQ(f.decls[0].method->params[0].type, "Sequence(Integer)");
    EXPECT_EQ(f.decls[0].clauses[0].label, std::optional<std::string>("nonEmpty"));
}

TEST(ParseConstraintFile, StructuralErrors)
{
    EXPECT_THROW(parse_constraint_file("context A"), SyntaxError);
    EXPECT_THROW(parse_constraint_file("context A inv size() > 0"), SyntaxError);
    EXPECT_THROW(parse_constraint_file("inv: true"), SyntaxError);
    EXPECT_THROW(parse_constraint_file("context A inv: a b"), SyntaxError);
    EXPECT_THROW(parse_constraint_file("context A::m( inv: true"), SyntaxError);
}

TEST(ParseConstraintFile, RepeatedContextsKept)
{
    auto f = parse_constraint_file("context A inv: true context A inv: false");
    ASSERT_EQ(f.decls.size(), 2u);
}
