#include "mdwp/messages.hpp"

#include <array>

namespace mdwp
{

namespace
{

constexpr std::array<std::pair<ErrorCode, std::string_view>, 10> kCodes{{
    {ErrorCode::NotSuspended, "NOT_SUSPENDED"},
    {ErrorCode::UnknownObject, "UNKNOWN_OBJECT"},
    {ErrorCode::UnknownClass, "UNKNOWN_CLASS"},
    {ErrorCode::UnknownMethod, "UNKNOWN_METHOD"},
    {ErrorCode::Purity, "PURITY"},
    {ErrorCode::Arity, "ARITY"},
    {ErrorCode::UnknownType, "UNKNOWN_TYPE"},
    {ErrorCode::UnknownField, "UNKNOWN_FIELD"},
    {ErrorCode::TargetException, "TARGET_EXCEPTION"},
    {ErrorCode::Protocol, "PROTOCOL"},
}};

constexpr std::array<std::string_view, std::variant_size_v<Body>> kBodyNames{
    "ListClasses", "ClassInfo", "SetEventPolicy", "Resume",     "Suspend",   "ReadField",   "ReadSeq",
    "InvokeMethod", "HeapDigest", "Disconnect",   "Ok",         "Error",     "ClassList",   "ClassInfoReply",
    "ValueReply",  "SeqReply",   "DigestReply",   "EventSet",   "Malformed",
};

constexpr std::array<std::string_view, std::variant_size_v<Event>> kEventNames{"VmStart", "MethodEntry",
                                                                               "MethodExit", "VmDeath"};

} // namespace

std::string_view to_string(ErrorCode code)
{
    for (const auto &[c, s] : kCodes)
        if (c == code)
            return s;
    return "PROTOCOL";
}

ErrorCode error_code_from_string(std::string_view s)
{
    for (const auto &[c, name] : kCodes)
        if (name == s)
            return c;
    return ErrorCode::Protocol;
}

std::string_view type_name(const Body &body)
{
    if (const auto *m = std::get_if<Malformed>(&body))
        return m->type;
    return kBodyNames[body.index()];
}

std::string_view type_name(const Event &event)
{
    return kEventNames[event.index()];
}

bool is_command(const Body &body)
{
    return body.index() < 10;
}

bool is_reply(const Body &body)
{
    return body.index() >= 10 && body.index() < 17;
}

} // namespace mdwp
