#pragma once

#include "mdwp/values.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mdwp
{

inline constexpr std::string_view kMagic = "MDWP-001";

// Commands (auditor -> VM).
struct ListClasses
{
    bool operator==(const ListClasses &) const = default;
};
struct ClassInfo
{
    std::string cls;
    bool operator==(const ClassInfo &) const = default;
};
struct SetEventPolicy
{
    std::vector<std::string> classes;
    bool entry = true;
    bool exit = true;
    bool operator==(const SetEventPolicy &) const = default;
};
struct Resume
{
    bool operator==(const Resume &) const = default;
};
struct Suspend
{
    bool operator==(const Suspend &) const = default;
};
struct ReadField
{
    std::int64_t obj_id = 0;
    std::string field;
    bool operator==(const ReadField &) const = default;
};
struct ReadSeq
{
    std::int64_t seq_id = 0;
    bool operator==(const ReadSeq &) const = default;
};
struct InvokeMethod
{
    std::int64_t obj_id = 0;
    std::string method;
    std::vector<WireValue> args;
    bool operator==(const InvokeMethod &) const = default;
};
struct HeapDigest
{
    bool operator==(const HeapDigest &) const = default;
};
struct Disconnect
{
    bool operator==(const Disconnect &) const = default;
};

// Replies (VM -> auditor), echoing the command id.
enum class ErrorCode
{
    NotSuspended,
    UnknownObject,
    UnknownClass,
    UnknownMethod,
    Purity,
    Arity,
    UnknownType,
    UnknownField,
    TargetException,
    Protocol, // anything this build does not recognise
};

std::string_view to_string(ErrorCode code);
ErrorCode error_code_from_string(std::string_view s);

struct Ok
{
    bool operator==(const Ok &) const = default;
};
struct Error
{
    ErrorCode code = ErrorCode::Protocol;
    std::string msg;
    bool operator==(const Error &) const = default;
};
struct ClassList
{
    std::vector<std::string> classes;
    bool operator==(const ClassList &) const = default;
};
struct FieldDesc
{
    std::string name;
    std::string visibility; // "public" | "private"
    std::string declaring;
    bool operator==(const FieldDesc &) const = default;
};
struct MethodDesc
{
    std::string name;
    std::vector<std::string> params;
    bool pure = false;
    std::string visibility;
    std::string declaring;
    bool operator==(const MethodDesc &) const = default;
};
struct ClassInfoReply
{
    std::string name;
    std::string kind = "class"; // "class" | "interface"
    std::optional<std::string> base;
    std::vector<std::string> interfaces;
    std::vector<FieldDesc> fields;
    std::vector<MethodDesc> methods;
    bool operator==(const ClassInfoReply &) const = default;
};
struct ValueReply
{
    WireValue value;
    bool operator==(const ValueReply &) const = default;
};
struct SeqReply
{
    std::vector<WireValue> elements;
    bool operator==(const SeqReply &) const = default;
};
struct DigestReply
{
    std::string hex64;
    bool operator==(const DigestReply &) const = default;
};

// Events, delivered only inside an EventSet.
struct VmStart
{
    bool operator==(const VmStart &) const = default;
};
struct CallSite
{
    std::string cls;
    std::string method;
    std::int64_t line = 0;
    bool operator==(const CallSite &) const = default;
};
struct MethodEntry
{
    std::int64_t frame_id = 0;
    std::string cls;
    std::string method;
    std::optional<std::int64_t> this_id;
    std::vector<WireValue> args;
    CallSite caller;
    bool operator==(const MethodEntry &) const = default;
};
struct MethodExit
{
    std::int64_t frame_id = 0;
    std::string cls;
    std::string method;
    std::optional<std::int64_t> this_id;
    std::vector<WireValue> args;
    CallSite caller;
    WireValue return_value;
    bool operator==(const MethodExit &) const = default;
};
struct VmDeath
{
    int exit_status = 0;
    std::int64_t entry_count = 0;
    std::optional<std::string> diagnostic;
    bool operator==(const VmDeath &) const = default;
};

using Event = std::variant<VmStart, MethodEntry, MethodExit, VmDeath>;

struct EventSet
{
    bool suspend = false;
    std::vector<Event> events;
    bool operator==(const EventSet &) const = default;
};

// A frame whose JSON was well formed but whose type or payload was not
// understood. Receivers answer it with Error UNKNOWN_TYPE and carry on.
struct Malformed
{
    std::string type;
    std::string reason;
    bool operator==(const Malformed &) const = default;
};

using Body = std::variant<ListClasses, ClassInfo, SetEventPolicy, Resume, Suspend, ReadField, ReadSeq, InvokeMethod,
                          HeapDigest, Disconnect, Ok, Error, ClassList, ClassInfoReply, ValueReply, SeqReply,
                          DigestReply, EventSet, Malformed>;

struct Message
{
    std::optional<std::int64_t> id;
    Body body;
    bool operator==(const Message &) const = default;

    template <typename T> const T *as() const noexcept { return std::get_if<T>(&body); }
    template <typename T> bool is() const noexcept { return std::holds_alternative<T>(body); }
};

/// The "type" discriminator of a body.
std::string_view type_name(const Body &body);
std::string_view type_name(const Event &event);

bool is_command(const Body &body);
bool is_reply(const Body &body);

} // namespace mdwp
