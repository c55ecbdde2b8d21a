#include "auditor/table.hpp"

#include "ocl/validate.hpp"

#include <functional>
#include <set>

namespace auditor
{

std::size_t ConstraintTable::invariant_count() const
{
    std::size_t n = 0;
    for (const auto &[cls, v] : invariants)
        n += v.size();
    return n;
}

std::vector<std::string> ConstraintTable::lineage(const std::string &cls) const
{
    std::vector<std::string> chain;
    std::set<std::string> seen;
    for (std::optional<std::string> c = cls; c && seen.insert(*c).second;)
    {
        chain.push_back(*c);
        auto it = graph.find(*c);
        c = it == graph.end() ? std::nullopt : it->second.base;
    }
    std::vector<std::string> out(chain.rbegin(), chain.rend());

    std::function<void(const std::string &)> visit = [&](const std::string &type) {
        auto it = graph.find(type);
        if (it == graph.end())
            return;
        for (const auto &i : it->second.interfaces)
            if (seen.insert(i).second)
            {
                out.push_back(i);
                visit(i);
            }
    };
    for (const auto &c : std::vector<std::string>(out))
        visit(c);
    return out;
}

std::vector<std::string> ConstraintTable::constrained_classes() const
{
    std::set<std::string> declaring;
    for (const auto &[cls, v] : invariants)
        declaring.insert(cls);
    for (const auto &[key, mc] : methods)
        declaring.insert(key.first);

    std::vector<std::string> out;
    for (const auto &[name, node] : graph)
    {
        if (node.is_interface)
            continue;
        for (const auto &t : lineage(name))
            if (declaring.count(t))
            {
                out.push_back(name);
                break;
            }
    }
    return out;
}

namespace
{

std::string where(const ocl::ConstraintFile &f, const ocl::SourceSpan &s)
{
    return f.source_name + ":" + ocl::to_string(s) + ": ";
}

} // namespace

Registration build_constraint_table(const ocl::ConstraintFile &file, TargetAccess &target)
{
    Registration reg;
    auto &table = reg.table;
    for (const auto &name : target.list_classes())
    {
        const auto &cm = target.class_mirror(name);
        table.graph[name] = TypeNode{cm.base, cm.interfaces, cm.is_interface()};
    }

    for (const auto &decl : file.decls)
    {
        if (!table.graph.count(decl.class_name))
        {
            reg.warnings.push_back(where(file, decl.origin) + "unknown context class " + decl.class_name);
            continue;
        }
        const auto &cm = target.class_mirror(decl.class_name);
        std::vector<std::string> params;
        if (decl.method)
        {
            const auto *m = cm.find_method(decl.method->name);
            if (m == nullptr)
            {
                reg.warnings.push_back(where(file, decl.origin) + "unknown context method " + decl.class_name +
                                       "::" + decl.method->name);
                continue;
            }
            if (m->params.size() != decl.method->params.size())
            {
                reg.warnings.push_back(where(file, decl.origin) + "context " + decl.key() + " declares " +
                                       std::to_string(decl.method->params.size()) +
                                       " parameter(s) but the target method takes " +
                                       std::to_string(m->params.size()));
                continue;
            }
            for (const auto &p : decl.method->params)
                params.push_back(p.name);
        }

        std::set<std::string> fields;
        for (const auto &f : cm.fields)
            fields.insert(f.name);

        for (const auto &clause : decl.clauses)
        {
            const auto diags = ocl::validate_clause(clause, decl, &fields);
            if (!diags.empty())
            {
                for (const auto &d : diags)
                    reg.warnings.push_back(where(file, d.span) + d.message + " (clause excluded)");
                continue;
            }
            ClauseRef ref{clause, decl.class_name, params, nullptr};
            switch (clause.kind)
            {
            case ocl::ClauseKind::Inv:
                table.invariants[decl.class_name].push_back(std::move(ref));
                break;
            case ocl::ClauseKind::Pre:
                table.methods[{decl.class_name, decl.method->name}].pre.push_back(std::move(ref));
                break;
            case ocl::ClauseKind::Post:
                ref.chains = std::make_shared<const ocl::PreChains>(ocl::extract_pre_chains(clause.expr));
                table.methods[{decl.class_name, decl.method->name}].post.push_back(std::move(ref));
                break;
            }
        }
    }
    return reg;
}

} // namespace auditor
