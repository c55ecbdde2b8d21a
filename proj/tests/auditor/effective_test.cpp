#include "auditor/effective.hpp"
#include "ocl/format.hpp"
#include "ocl/parser.hpp"

#include <gtest/gtest.h>

using namespace auditor;

namespace
{

ClauseRef clause(ocl::ClauseKind kind, const std::string &text, const std::string &declaring)
{
    ocl::Clause c;
    c.kind = kind;
    c.expr = ocl::parse_expression(text);
    return ClauseRef{c, declaring, {}, nullptr};
}

std::vector<std::string> texts(const std::vector<ClauseRef> &cs)
{
    std::vector<std::string> out;
    for (const auto &c : cs)
        out.push_back(ocl::format_expr(*c.clause.expr));
    return out;
}

// Base <- Derived, Derived implements Marked.
ConstraintTable hierarchy()
{
    ConstraintTable t;
    t.graph["Base"] = TypeNode{};
    t.graph["Derived"] = TypeNode{std::string("Base"), {"Marked"}, false};
    t.graph["Marked"] = TypeNode{std::nullopt, {}, true};
    return t;
}

} // namespace

TEST(Effective, SingleTypeSingleGroup)
{
    auto t = hierarchy();
    t.methods[{"Base", "m"}].pre.push_back(clause(ocl::ClauseKind::Pre, "x > 0", "Base"));
    const auto ec = combine(t, "Base", "m");
    ASSERT_EQ(ec.pre.size(), 1u);
    EXPECT_EQ(ec.pre[0].declaring, "Base");
    EXPECT_EQ(texts(ec.pre[0].clauses), std::vector<std::string>{"x > 0"});
}

TEST(Effective, PreGroupsFollowTheLineage)
{
    auto t = hierarchy();
    t.methods[{"Base", "m"}].pre.push_back(clause(ocl::ClauseKind::Pre, "x > 0", "Base"));
    t.methods[{"Derived", "m"}].pre.push_back(clause(ocl::ClauseKind::Pre, "true", "Derived"));
    t.methods[{"Marked", "m"}].pre.push_back(clause(ocl::ClauseKind::Pre, "x = 7", "Marked"));
    const auto ec = combine(t, "Derived", "m");
    ASSERT_EQ(ec.pre.size(), 3u);
    EXPECT_EQ(ec.pre[0].declaring, "Base");
    EXPECT_EQ(ec.pre[1].declaring, "Derived");
    EXPECT_EQ(ec.pre[2].declaring, "Marked");
    // The base alone sees only its own group.
    EXPECT_EQ(combine(t, "Base", "m").pre.size(), 1u);
}

TEST(Effective, InvariantsAndPostsConjoinRootFirst)
{
    auto t = hierarchy();
    t.invariants["Derived"].push_back(clause(ocl::ClauseKind::Inv, "i2", "Derived"));
    t.invariants["Base"].push_back(clause(ocl::ClauseKind::Inv, "i1", "Base"));
    t.invariants["Marked"].push_back(clause(ocl::ClauseKind::Inv, "i3", "Marked"));
    t.methods[{"Derived", "m"}].post.push_back(clause(ocl::ClauseKind::Post, "p2", "Derived"));
    t.methods[{"Base", "m"}].post.push_back(clause(ocl::ClauseKind::Post, "p1", "Base"));
    const auto ec = combine(t, "Derived", "m");
    EXPECT_EQ(texts(ec.invariants), (std::vector<std::string>{"i1", "i2", "i3"}));
    EXPECT_EQ(texts(ec.post), (std::vector<std::string>{"p1", "p2"}));
    EXPECT_TRUE(ec.pre.empty()); // no groups: vacuously satisfied
}

TEST(Effective, UnconstrainedMethodStillCarriesInvariants)
{
    auto t = hierarchy();
    t.invariants["Base"].push_back(clause(ocl::ClauseKind::Inv, "i1", "Base"));
    const auto ec = combine(t, "Derived", "other");
    EXPECT_FALSE(ec.empty());
    EXPECT_TRUE(ec.pre.empty());
    EXPECT_TRUE(combine(hierarchy(), "Derived", "other").empty());
}

TEST(Effective, IndexMemoizes)
{
    auto t = hierarchy();
    t.methods[{"Base", "m"}].pre.push_back(clause(ocl::ClauseKind::Pre, "x > 0", "Base"));
    EffectiveIndex idx(t);
    const auto &a = idx.get("Derived", "m");
    const auto &b = idx.get("Derived", "m");
    EXPECT_EQ(&a, &b);
    EXPECT_EQ(a.pre.size(), 1u);
}
