#include "auditor/table.hpp"
#include "ocl/format.hpp"
#include "ocl/parser.hpp"
#include "support/inproc.hpp"

#include <gtest/gtest.h>

using namespace testsupport;

namespace
{

auditor::Registration register_text(IdleVm &vm, const std::string &ocl)
{
    return auditor::build_constraint_table(ocl::parse_constraint_file(ocl), vm.target);
}

bool mentions(const std::vector<std::string> &warnings, const std::string &needle)
{
    for (const auto &w : warnings)
        if (w.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST(ConstraintTable, BoundedStackFixture)
{
    IdleVm vm(read_text(fixture("bounded_stack.mob")));
    const auto reg = register_text(vm, read_text(fixture("bounded_stack.ocl")));
    EXPECT_TRUE(reg.warnings.empty());
    EXPECT_EQ(reg.table.invariant_count(), 2u);
    EXPECT_EQ(reg.table.method_count(), 6u);
    const auto &push = reg.table.methods.at({"BoundedStack", "push"});
    EXPECT_EQ(push.pre.size(), 1u);
    ASSERT_EQ(push.post.size(), 3u);
    EXPECT_EQ(push.post[0].params, std::vector<std::string>{"obj"});
    ASSERT_TRUE(push.post[0].chains);
    EXPECT_EQ(push.post[0].chains->slot_count, 1u);
    EXPECT_TRUE(push.post[2].chains->empty());
    EXPECT_EQ(reg.table.constrained_classes(), std::vector<std::string>{"BoundedStack"});
}

TEST(ConstraintTable, UnknownContextClassIsWarnedAndSkipped)
{
    IdleVm vm(read_text(fixture("bounded_stack.mob")));
    const auto reg = register_text(vm, "context Ghost inv: true\ncontext BoundedStack inv: size() >= 0");
    EXPECT_TRUE(mentions(reg.warnings, "unknown context class Ghost"));
    EXPECT_EQ(reg.table.invariants.count("Ghost"), 0u);
    EXPECT_EQ(reg.table.invariant_count(), 1u);
}

TEST(ConstraintTable, UnknownMethodAndArityMismatch)
{
    IdleVm vm(read_text(fixture("bounded_stack.mob")));
    const auto reg = register_text(vm, "context BoundedStack::fly() pre: true\n"
                                       "context BoundedStack::push(a : Integer, b : Integer) pre: true\n");
    ASSERT_EQ(reg.warnings.size(), 2u);
    EXPECT_TRUE(mentions(reg.warnings, "unknown context method BoundedStack::fly"));
    EXPECT_TRUE(mentions(reg.warnings, "declares 2 parameter(s) but the target method takes 1"));
    EXPECT_TRUE(reg.table.empty());
}

TEST(ConstraintTable, UnknownBareIdentifierExcludesOnlyThatClause)
{
    IdleVm vm(read_text(fixture("bounded_stack.mob")));
    const auto reg = register_text(vm, "context BoundedStack inv: ghost > 0\ninv: cap > 0");
    ASSERT_EQ(reg.warnings.size(), 1u);
    EXPECT_TRUE(mentions(reg.warnings, "(clause excluded)"));
    ASSERT_EQ(reg.table.invariant_count(), 1u);
    EXPECT_EQ(ocl::format_expr(*reg.table.invariants.at("BoundedStack")[0].clause.expr), "cap > 0");
}

TEST(ConstraintTable, RepeatedContextsMergeInSourceOrder)
{
    IdleVm vm(read_text(fixture("bounded_stack.mob")));
    const auto reg = register_text(vm, "context BoundedStack::pop() pre: size() > 0\n"
                                       "context BoundedStack inv: cap > 0\n"
                                       "context BoundedStack::pop() pre: not empty()\n");
    const auto &pre = reg.table.methods.at({"BoundedStack", "pop"}).pre;
    ASSERT_EQ(pre.size(), 2u);
    EXPECT_EQ(ocl::format_expr(*pre[0].clause.expr), "size() > 0");
    EXPECT_EQ(ocl::format_expr(*pre[1].clause.expr), "not empty()");
    EXPECT_EQ(reg.table.method_count(), 1u);
}

TEST(ConstraintTable, LineageAndConstrainedClasses)
{
    IdleVm vm("interface Sized { def size(); }\n"
              "class A implements Sized { def size() { return 0; } }\n"
              "class B extends A { }\n"
              "class C extends B { }\n"
              "class Other { }\n"
              "main { }");
    const auto reg = register_text(vm, "context Sized::size() : Integer post: result >= 0");
    EXPECT_EQ(reg.table.lineage("C"), (std::vector<std::string>{"A", "B", "C", "Sized"}));
    EXPECT_EQ(reg.table.lineage("Other"), std::vector<std::string>{"Other"});
    EXPECT_EQ(reg.table.constrained_classes(), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(ConstraintTable, DerivedContextsAreTheirOwnEntries)
{
    IdleVm vm(read_text(fixture("weak_stack.mob")));
    const auto reg = register_text(vm, read_text(fixture("liskov.ocl")));
    EXPECT_TRUE(reg.warnings.empty());
    EXPECT_EQ(reg.table.invariant_count(), 3u);
    EXPECT_EQ(reg.table.method_count(), 7u);
    EXPECT_EQ(reg.table.constrained_classes(), (std::vector<std::string>{"BoundedStack", "WeakStack"}));
}
