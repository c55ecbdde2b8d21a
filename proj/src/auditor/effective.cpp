#include "auditor/effective.hpp"

namespace auditor
{

EffectiveConstraints combine(const ConstraintTable &table, const std::string &cls, const std::string &method)
{
    EffectiveConstraints ec;
    for (const auto &type : table.lineage(cls))
    {
        if (auto it = table.invariants.find(type); it != table.invariants.end())
            ec.invariants.insert(ec.invariants.end(), it->second.begin(), it->second.end());
        auto it = table.methods.find({type, method});
        if (it == table.methods.end())
            continue;
        if (!it->second.pre.empty())
            ec.pre.push_back(PreGroup{type, it->second.pre});
        ec.post.insert(ec.post.end(), it->second.post.begin(), it->second.post.end());
    }
    return ec;
}

const EffectiveConstraints &EffectiveIndex::get(const std::string &cls, const std::string &method)
{
    const auto key = std::make_pair(cls, method);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;
    return memo_.emplace(key, combine(table_, cls, method)).first->second;
}

} // namespace auditor
