#pragma once

#include "ocl/ast.hpp"

#include <cstddef>
#include <vector>

namespace ocl
{

struct PreChain
{
    // Root of the maximal postfix chain. The whole chain is evaluated at entry.
    ExprPtr root;
    std::size_t slot = 0;
};

struct PreChains
{
    // Every occurrence in left-to-right source order; structurally equal
    // chains share a slot.
    std::vector<PreChain> chains;
    std::size_t slot_count = 0;

    bool empty() const noexcept { return chains.empty(); }
};

/// Finds the navigation chains of a postcondition that need entry-time
/// values. A chain is the maximal receiver spine above a `@pre` marker, so
/// `v@pre.size() + 1` captures `v@pre.size()` as a whole.
PreChains extract_pre_chains(const ExprPtr &post);

} // namespace ocl
