// Combined constraints on random hierarchies against a brute-force fold.

#include "support/liskov_gen.hpp"

#include <gtest/gtest.h>

using namespace testsupport;

TEST(LiskovProperty, RandomHierarchiesMatchTheFold)
{
    int cases = 0, grouped = 0, with_interface = 0;
    std::size_t compared = 0;
    for (std::uint64_t seed = 1; seed <= 250; ++seed)
    {
        const auto c = make_liskov_case(seed);
        const auto a = audit_in_process(c.program, c.constraints);
        const auto diff = compare_liskov(c, a);
        ASSERT_TRUE(diff.empty()) << "seed " << seed << ": " << diff << "\n" << c.program << "\n" << c.constraints;
        ++cases;
        compared += c.expected.size();
        grouped += c.constraints.find("combined") == std::string::npos &&
                   std::any_of(c.expected.begin(), c.expected.end(),
                               [](const nlohmann::json &r) { return r.contains("label"); });
        with_interface += c.program.find("interface") != std::string::npos;
    }
    EXPECT_GE(cases, 200);
    EXPECT_GT(compared, 2000u);
    // The generator actually exercises the interesting shapes.
    EXPECT_GT(grouped, 50);
    EXPECT_GT(with_interface, 50);
}

TEST(LiskovProperty, WeakerDerivedPreconditionRescuesACall)
{
    const std::string program = "class Base { def m(x) { return x; } }\n"
                                "class Derived extends Base { def m(x) { return x; } }\n"
                                "main {\n"
                                "    b = new Base(); b.m(-1);\n"
                                "    d = new Derived(); d.m(-1);\n"
                                "}\n";
    const std::string constraints = "context Base::m(x : Integer) : Integer pre: x > 0\n"
                                    "context Derived::m(x : Integer) : Integer pre: true\n"
                                    "context Derived inv: 1 < 2\n";
    const auto a = audit_in_process(program, constraints);
    const auto base = a.where("context", "Base::m");
    ASSERT_EQ(base.size(), 1u);
    EXPECT_EQ(base[0]["verdict"], "FAIL");
    std::size_t derived_inv = 0;
    for (const auto &r : a.where("context", "Derived::m"))
    {
        if (r.contains("label") && r["label"] == "combined")
        {
            EXPECT_EQ(r["verdict"], "PASS");
        }
        derived_inv += r["kind"] == "inv";
    }
    EXPECT_EQ(derived_inv, 2u); // the derived invariant adds an entry and an exit check
    EXPECT_EQ(a.summary["fail"], 1);
}
