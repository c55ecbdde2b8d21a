#include "minivm/classes.hpp"
#include "minivm/parser.hpp"
#include "support/inproc.hpp"

#include <gtest/gtest.h>

using minivm::parse_program;
using minivm::ProgramError;

namespace
{

std::string error_of(const std::string &src)
{
    try
    {
        parse_program(src);
    }
    catch (const ProgramError &e)
    {
        return e.message();
    }
    return "";
}

} // namespace

TEST(MiniObjParser, BoundedStackPort)
{
    const auto p = parse_program(testsupport::read_text(testsupport::fixture("bounded_stack.mob")));
    ASSERT_EQ(p.classes.size(), 1u);
    const auto &c = p.classes[0];
    EXPECT_EQ(c.name, "BoundedStack");
    ASSERT_EQ(c.methods.size(), 7u); // six methods plus init
    ASSERT_NE(c.constructor(), nullptr);
    std::map<std::string, const minivm::MethodDef *> by_name;
    for (const auto &m : c.methods)
        by_name[m.name] = &m;
    for (const char *pure : {"peek", "empty", "size", "capacity"})
        EXPECT_TRUE(by_name.at(pure)->pure) << pure;
    for (const char *impure : {"push", "pop", "init"})
        EXPECT_FALSE(by_name.at(impure)->pure) << impure;
    EXPECT_EQ(by_name.at("capacity")->visibility, minivm::Visibility::Private);
    ASSERT_EQ(c.fields.size(), 2u);
    EXPECT_EQ(c.fields[0].name, "v");
    EXPECT_EQ(c.fields[1].name, "cap");
}

TEST(MiniObjParser, UnknownBase)
{
    EXPECT_EQ(error_of("class A extends B {} main {}"), "unknown base class B");
}

TEST(MiniObjParser, SelfInheritanceIsACycle)
{
    EXPECT_NE(error_of("class A extends A {} main {}").find("inheritance cycle"), std::string::npos);
}

TEST(MiniObjParser, LongerCycle)
{
    EXPECT_NE(error_of("class A extends B {} class B extends C {} class C extends A {} main {}")
                  .find("inheritance cycle"),
              std::string::npos);
}

TEST(MiniObjParser, DuplicateClass)
{
    EXPECT_NE(error_of("class A {} class A {} main {}").find("duplicate class"), std::string::npos);
}

TEST(MiniObjParser, SyntaxErrorCarriesLocation)
{
    try
    {
        parse_program("main {\n  x = ;\n}");
        FAIL() << "expected a syntax error";
    }
    catch (const ProgramError &e)
    {
        EXPECT_EQ(e.line(), 2);
        EXPECT_GT(e.column(), 0);
    }
}

TEST(MiniObjParser, MainIsRequiredOnce)
{
    EXPECT_NE(error_of("class A {}"), "");
    EXPECT_NE(error_of("main {} main {}"), "");
}

TEST(MiniObjParser, DuplicateMembers)
{
    EXPECT_NE(error_of("class A { var x; var x; } main {}"), "");
    EXPECT_NE(error_of("class A { def f() {} def f() {} } main {}"), "");
}

TEST(MiniObjParser, InterfacesAndConformance)
{
    const auto p = parse_program("interface Sized { pure def size(); }\n"
                                 "class A implements Sized { pure def size() { return 0; } }\n"
                                 "main {}");
    ASSERT_EQ(p.interfaces.size(), 1u);
    EXPECT_EQ(p.classes[0].interfaces, std::vector<std::string>{"Sized"});
    EXPECT_NE(error_of("interface Sized { pure def size(); } class A implements Sized {} main {}"), "");
}

TEST(MiniObjParser, ClassTableLayoutInheritsSlots)
{
    auto lp = testsupport::load_program(testsupport::read_text(testsupport::fixture("weak_stack.mob")));
    const auto *weak = lp->table->find("WeakStack");
    ASSERT_NE(weak, nullptr);
    ASSERT_EQ(weak->layout.size(), 3u);
    EXPECT_EQ(weak->layout[0].name, "v");
    EXPECT_EQ(weak->layout[2].name, "pushes");
    const auto *push = weak->find_method("push");
    ASSERT_NE(push, nullptr);
    EXPECT_EQ(push->declaring->name, "WeakStack");
    EXPECT_EQ(weak->find_method("peek")->declaring->name, "BoundedStack");
    EXPECT_TRUE(weak->is_a("BoundedStack"));
}
