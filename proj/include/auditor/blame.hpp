#pragma once

#include "mdwp/messages.hpp"
#include "ocl/ast.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace auditor
{

enum class Party
{
    Client,
    Server,
};

std::string_view to_string(Party p);

struct BlameTag
{
    Party party = Party::Server;
    std::string cls;
    std::string method;
    std::optional<std::int64_t> line; // CLIENT only
};

/// pre: the caller broke the contract. inv/post: the class that declared the
/// executing method did.
BlameTag attribute_blame(ocl::ClauseKind kind, const mdwp::CallSite &caller, const std::string &declaring,
                         const std::string &method);

} // namespace auditor
