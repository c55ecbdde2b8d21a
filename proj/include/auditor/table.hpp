#pragma once

#include "auditor/access.hpp"
#include "ocl/ast.hpp"
#include "ocl/pre_chains.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace auditor
{

/// One declared clause together with the context it came from.
struct ClauseRef
{
    ocl::Clause clause;
    std::string declaring;           // context class (or interface)
    std::vector<std::string> params; // parameter names of that context, positional
    std::shared_ptr<const ocl::PreChains> chains; // post only
};

struct MethodClauses
{
    std::vector<ClauseRef> pre;
    std::vector<ClauseRef> post;
};

struct TypeNode
{
    std::optional<std::string> base;
    std::vector<std::string> interfaces;
    bool is_interface = false;
};

struct ConstraintTable
{
    std::map<std::string, std::vector<ClauseRef>> invariants;
    std::map<std::pair<std::string, std::string>, MethodClauses> methods;
    std::map<std::string, TypeNode> graph; // whole catalog, declaration order lost

    std::size_t invariant_count() const;
    std::size_t method_count() const { return methods.size(); }
    bool empty() const { return invariants.empty() && methods.empty(); }

    /// The base chain of `cls` from the root down to `cls` itself, then every
    /// interface reachable from it (first-reached order, without repeats).
    std::vector<std::string> lineage(const std::string &cls) const;
    /// Non-interface catalog types with at least one applicable clause.
    std::vector<std::string> constrained_classes() const;
};

struct Registration
{
    ConstraintTable table;
    std::vector<std::string> warnings;
};

/// Indexes the clauses of `file` against the target's catalog. Contexts that
/// do not fit the catalog are reported and left out.
Registration build_constraint_table(const ocl::ConstraintFile &file, TargetAccess &target);

} // namespace auditor
