#include "auditor/blame.hpp"

namespace auditor
{

std::string_view to_string(Party p) { return p == Party::Client ? "CLIENT" : "SERVER"; }

BlameTag attribute_blame(ocl::ClauseKind kind, const mdwp::CallSite &caller, const std::string &declaring,
                         const std::string &method)
{
    if (kind == ocl::ClauseKind::Pre)
        return {Party::Client, caller.cls, caller.method, caller.line};
    return {Party::Server, declaring, method, std::nullopt};
}

} // namespace auditor
