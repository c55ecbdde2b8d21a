#pragma once

#include "auditor/table.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace auditor
{

/// Clauses of one declaring type; AND-ed together.
struct PreGroup
{
    std::string declaring;
    std::vector<ClauseRef> clauses;
};

/// Liskov-combined view for one (class, method):
///   invariants  AND, root-most ancestor first, then interfaces
///   pre         OR over groups (no groups: vacuously true)
///   post        AND
struct EffectiveConstraints
{
    std::vector<ClauseRef> invariants;
    std::vector<PreGroup> pre;
    std::vector<ClauseRef> post;

    bool empty() const { return invariants.empty() && pre.empty() && post.empty(); }
};

EffectiveConstraints combine(const ConstraintTable &table, const std::string &cls, const std::string &method);

/// Memoizing front for combine().
class EffectiveIndex
{
  public:
    explicit EffectiveIndex(const ConstraintTable &table) : table_(table) {}
    const EffectiveConstraints &get(const std::string &cls, const std::string &method);

  private:
    const ConstraintTable &table_;
    std::map<std::pair<std::string, std::string>, EffectiveConstraints> memo_;
};

} // namespace auditor
