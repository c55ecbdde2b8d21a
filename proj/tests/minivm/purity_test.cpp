#include "minivm/classes.hpp"
#include "minivm/parser.hpp"
#include "minivm/purity.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace
{

std::vector<minivm::PurityDiagnostic> diagnose(const std::string &cls_body)
{
    const auto p = minivm::parse_program("class A {\n var v;\n var n;\n" + cls_body + "\n}\nmain {}");
    return minivm::check_purity(p);
}

} // namespace

TEST(Purity, ReadingBuiltinIsFine)
{
    EXPECT_TRUE(diagnose("pure def size() { return v.size(); }").empty());
}

TEST(Purity, MutatingSequenceCall)
{
    const auto d = diagnose("pure def bad() { v.add(1); return 0; }");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].message, "mutating call in pure method");
    EXPECT_EQ(d[0].method, "bad");
}

TEST(Purity, TransitiveRule)
{
    const auto d = diagnose("def g() { return 1; }\npure def f() { return g(); }");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].message, "pure calls non-pure");
}

TEST(Purity, PureMayCallPure)
{
    EXPECT_TRUE(diagnose("pure def g() { return 1; }\npure def f() { return g() + 1; }").empty());
}

TEST(Purity, FieldAssignmentPrintAndRemoveLast)
{
    EXPECT_FALSE(diagnose("pure def f() { n = 1; return n; }").empty());
    EXPECT_FALSE(diagnose("pure def f() { print(1); return 0; }").empty());
    EXPECT_FALSE(diagnose("pure def f() { return v.removeLast(); }").empty());
    EXPECT_FALSE(diagnose("pure def f() { v.set(0, 1); return 0; }").empty());
}

TEST(Purity, LocalsAreAllowed)
{
    EXPECT_TRUE(diagnose("pure def f() { x = 0; i = 0; while (i < 3) { x = x + i; i = i + 1; } return x; }").empty());
}

TEST(Purity, AllocationIsRejected)
{
    EXPECT_FALSE(diagnose("pure def f() { return seq(); }").empty());
    EXPECT_FALSE(diagnose("pure def f() { return new A(); }").empty());
}

TEST(Purity, FixturesAreClean)
{
    for (const char *f : {"bounded_stack.mob", "weak_stack.mob", "broken_stack.mob", "oracle_states.mob"})
    {
        std::ifstream in(std::string(FIXTURE_DIR) + "/" + f);
        std::stringstream ss;
        ss << in.rdbuf();
        EXPECT_TRUE(minivm::check_purity(minivm::parse_program(ss.str())).empty()) << f;
    }
}
