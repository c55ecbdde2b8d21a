#pragma once

// Random class chains L0 <- L1 <- ... with an optional interface, clauses that
// evaluate to a known PASS/FAIL/ERROR, and the record stream a brute-force
// fold over the hierarchy predicts for every call of m.

#include "support/inproc_audit.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport
{

struct LiskovCase
{
    std::string program;
    std::string constraints;
    std::vector<nlohmann::json> expected; // records for contexts *::m, without seq/ids
};

namespace liskov_detail
{

struct Clause
{
    std::string text;
    // Verdict as a function of the argument x (result == x).
    std::string (*verdict)(std::int64_t);
};

inline std::string pass(std::int64_t) { return "PASS"; }
inline std::string fail(std::int64_t) { return "FAIL"; }
inline std::string error(std::int64_t) { return "ERROR"; }
inline std::string positive(std::int64_t x) { return x > 0 ? "PASS" : "FAIL"; }
inline std::string big(std::int64_t x) { return x > 5 ? "PASS" : "FAIL"; }

inline const std::vector<Clause> &inv_pool()
{
    static const std::vector<Clause> p{{"true", pass}, {"false", fail}, {"1 + true > 0", error}, {"1 < 2", pass}};
    return p;
}
inline const std::vector<Clause> &pre_pool()
{
    static const std::vector<Clause> p{
        {"true", pass}, {"false", fail}, {"x > 0", positive}, {"x > 5", big}, {"1 + true > 0", error}};
    return p;
}
inline const std::vector<Clause> &post_pool()
{
    static const std::vector<Clause> p{{"true", pass},           {"false", fail}, {"result > 0", positive},
                                       {"result = x", pass},     {"x > 5", big},  {"1 + true > 0", error}};
    return p;
}

struct Type
{
    std::string name;
    std::vector<const Clause *> inv, pre, post;
};

inline std::string conjoin(const std::vector<std::string> &vs)
{
    std::string out = "PASS";
    for (const auto &v : vs)
    {
        if (v == "FAIL")
            return "FAIL";
        if (v == "ERROR")
            out = "ERROR";
    }
    return out;
}

} // namespace liskov_detail

inline LiskovCase make_liskov_case(std::uint64_t seed)
{
    using namespace liskov_detail;
    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    auto clauses = [&](const std::vector<Clause> &pool, int max) {
        std::vector<const Clause *> out(static_cast<std::size_t>(pick(max + 1)));
        for (auto &c : out)
            c = &pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
        return out;
    };

    const int depth = 2 + pick(3);
    const int iface_at = pick(2) ? pick(depth) : -1; // class that implements I
    std::vector<bool> overrides(static_cast<std::size_t>(depth));
    std::vector<Type> types;
    for (int k = 0; k < depth; ++k)
    {
        overrides[static_cast<std::size_t>(k)] = k == 0 || k == iface_at || pick(2) == 0;
        types.push_back({"L" + std::to_string(k), clauses(inv_pool(), 2), clauses(pre_pool(), 2),
                         clauses(post_pool(), 2)});
    }
    std::optional<Type> iface;
    if (iface_at >= 0)
        iface = Type{"I", clauses(inv_pool(), 1), clauses(pre_pool(), 2), clauses(post_pool(), 1)};

    LiskovCase c;
    std::ostringstream prog;
    int line = 1;
    auto emit = [&](const std::string &text) {
        prog << text << "\n";
        ++line;
    };
    if (iface)
        emit("interface I { def m(x); }");
    for (int k = 0; k < depth; ++k)
    {
        std::string head = "class L" + std::to_string(k);
        if (k > 0)
            head += " extends L" + std::to_string(k - 1);
        if (k == iface_at)
            head += " implements I";
        emit(head + " {");
        if (overrides[static_cast<std::size_t>(k)])
            emit("    def m(x) { return x; }");
        emit("}");
    }

    auto context_block = [](const Type &t) {
        std::string out;
        if (!t.inv.empty())
        {
            out += "context " + t.name + "\n";
            for (const auto *cl : t.inv)
                out += "inv: " + cl->text + "\n";
        }
        if (!t.pre.empty() || !t.post.empty())
        {
            out += "context " + t.name + "::m(x : Integer) : Integer\n";
            for (const auto *cl : t.pre)
                out += "pre: " + cl->text + "\n";
            for (const auto *cl : t.post)
                out += "post: " + cl->text + "\n";
        }
        return out;
    };
    for (const auto &t : types)
        c.constraints += context_block(t);
    if (iface)
        c.constraints += context_block(*iface);
    if (c.constraints.empty())
        c.constraints = "context L0 inv: true\n"; // the file needs one context
    bool filler = c.constraints == "context L0 inv: true\n";

    emit("main {");
    const int calls = 2 + pick(3);
    static const std::int64_t xs[] = {-1, 3, 7};
    for (int i = 0; i < calls; ++i)
    {
        const int d = pick(depth);
        const std::int64_t x = xs[pick(3)];
        const int call_line = line;
        emit("    o = new L" + std::to_string(d) + "(); o.m(" + std::to_string(x) + ");");

        // Lineage of L<d>: root first, then I if some class in the chain implements it.
        std::vector<const Type *> lineage;
        for (int k = 0; k <= d; ++k)
            lineage.push_back(&types[static_cast<std::size_t>(k)]);
        if (iface && iface_at <= d)
            lineage.push_back(&*iface);
        int declaring = d;
        while (!overrides[static_cast<std::size_t>(declaring)])
            --declaring;
        const std::string decl = "L" + std::to_string(declaring);
        const std::string ctx = "L" + std::to_string(d) + "::m";

        std::vector<const Clause *> invs, posts;
        std::vector<std::vector<const Clause *>> groups;
        for (const auto *t : lineage)
        {
            invs.insert(invs.end(), t->inv.begin(), t->inv.end());
            posts.insert(posts.end(), t->post.begin(), t->post.end());
            if (!t->pre.empty())
                groups.push_back(t->pre);
        }
        if (filler)
            invs.push_back(&inv_pool()[0]);
        const bool any = !invs.empty() || !posts.empty() || !groups.empty();
        if (!any)
            continue;

        auto record = [&](const char *phase, const char *kind, const std::string &expr, const std::string &verdict) {
            nlohmann::json r;
            r["phase"] = phase;
            r["context"] = ctx;
            r["kind"] = kind;
            r["expr"] = expr;
            r["verdict"] = verdict;
            if (verdict == "FAIL")
                r["blame"] = std::string(kind) == "pre"
                                 ? nlohmann::json{{"party", "CLIENT"}, {"class", "Main"}, {"method", "main"}, {"line", call_line}}
                                 : nlohmann::json{{"party", "SERVER"}, {"class", decl}, {"method", "m"}, {"line", nullptr}};
            return r;
        };

        for (const auto *cl : invs)
            c.expected.push_back(record("entry", "inv", cl->text, cl->verdict(x)));
        std::optional<std::string> entry_pre;
        if (!groups.empty())
        {
            const bool grouped = groups.size() > 1;
            std::vector<std::string> group_verdicts;
            std::string text;
            for (const auto &g : groups)
            {
                std::vector<std::string> vs;
                std::string inner;
                for (const auto *cl : g)
                {
                    vs.push_back(cl->verdict(x));
                    auto r = record("entry", "pre", cl->text, vs.back());
                    if (grouped)
                        r["member"] = true;
                    c.expected.push_back(r);
                    inner += (inner.empty() ? "(" : " and (") + cl->text + ")";
                }
                group_verdicts.push_back(conjoin(vs));
                text += (text.empty() ? "" : " or ") + (g.size() == 1 ? inner : "(" + inner + ")");
            }
            if (grouped)
            {
                bool some_pass = false, some_error = false;
                for (const auto &v : group_verdicts)
                {
                    some_pass |= v == "PASS";
                    some_error |= v == "ERROR";
                }
                entry_pre = some_pass ? "PASS" : some_error ? "ERROR" : "FAIL";
                auto r = record("entry", "pre", text, *entry_pre);
                r["label"] = "combined";
                c.expected.push_back(r);
            }
            else
                entry_pre = group_verdicts[0];
        }
        for (const auto *cl : posts)
        {
            auto r = record("exit", "post", cl->text, cl->verdict(x));
            if (entry_pre)
                r["entryPre"] = *entry_pre;
            c.expected.push_back(r);
        }
        for (const auto *cl : invs)
            c.expected.push_back(record("exit", "inv", cl->text, cl->verdict(x)));
    }
    emit("}");
    c.program = prog.str();
    return c;
}

/// Empty when the audit matches the prediction, else the first difference.
inline std::string compare_liskov(const LiskovCase &c, const InProcessAudit &a)
{
    std::vector<nlohmann::json> got;
    for (const auto &r : a.records)
    {
        const std::string ctx = r["context"];
        if (ctx.size() < 3 || ctx.substr(ctx.size() - 3) != "::m")
            continue;
        auto k = r;
        for (const char *drop : {"seq", "objectId", "frameId", "detail", "errorCode"})
            k.erase(drop);
        got.push_back(k);
    }
    for (std::size_t i = 0; i < std::max(got.size(), c.expected.size()); ++i)
    {
        if (i >= got.size())
            return "missing record " + c.expected[i].dump();
        if (i >= c.expected.size())
            return "unexpected record " + got[i].dump();
        if (got[i] != c.expected[i])
            return "record " + std::to_string(i) + ": got " + got[i].dump() + " expected " + c.expected[i].dump();
    }
    if (!a.warnings.empty())
        return "warning: " + a.warnings.front();
    return {};
}

} // namespace testsupport
