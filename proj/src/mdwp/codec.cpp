#include "mdwp/codec.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdwp
{

namespace
{

template <typename... Fs> struct overloaded : Fs...
{
    using Fs::operator()...;
};
template <typename... Fs> overloaded(Fs...) -> overloaded<Fs...>;

// Thrown while reading a payload; turned into a Malformed body.
struct BadPayload : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

const Json &field(const Json &j, const char *name)
{
    auto it = j.find(name);
    if (it == j.end())
        throw BadPayload(std::string("missing \"") + name + "\"");
    return *it;
}

std::string get_string(const Json &j, const char *name)
{
    const auto &f = field(j, name);
    if (!f.is_string())
        throw BadPayload(std::string("\"") + name + "\" must be a string");
    return f.get<std::string>();
}

bool get_bool(const Json &j, const char *name)
{
    const auto &f = field(j, name);
    if (!f.is_boolean())
        throw BadPayload(std::string("\"") + name + "\" must be a boolean");
    return f.get<bool>();
}

std::int64_t as_int(const Json &f, const char *name)
{
    if (f.is_number_unsigned())
    {
        if (f.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw BadPayload(std::string("\"") + name + "\" out of range");
        return static_cast<std::int64_t>(f.get<std::uint64_t>());
    }
    if (!f.is_number_integer())
        throw BadPayload(std::string("\"") + name + "\" must be an integer");
    return f.get<std::int64_t>();
}

std::int64_t get_int(const Json &j, const char *name)
{
    return as_int(field(j, name), name);
}

std::vector<std::string> get_strings(const Json &j, const char *name)
{
    const auto &f = field(j, name);
    if (!f.is_array())
        throw BadPayload(std::string("\"") + name + "\" must be an array");
    std::vector<std::string> out;
    for (const auto &e : f)
    {
        if (!e.is_string())
            throw BadPayload(std::string("\"") + name + "\" must hold strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<WireValue> get_values(const Json &j, const char *name)
{
    const auto &f = field(j, name);
    if (!f.is_array())
        throw BadPayload(std::string("\"") + name + "\" must be an array");
    std::vector<WireValue> out;
    for (const auto &e : f)
        out.push_back(value_from_json(e));
    return out;
}

Json values_json(const std::vector<WireValue> &vs)
{
    Json a = Json::array();
    for (const auto &v : vs)
        a.push_back(value_to_json(v));
    return a;
}

Json strings_json(const std::vector<std::string> &vs)
{
    Json a = Json::array();
    for (const auto &v : vs)
        a.push_back(v);
    return a;
}

void put_frame_fields(Json &j, std::int64_t frame_id, const std::string &cls, const std::string &method,
                      const std::optional<std::int64_t> &this_id, const std::vector<WireValue> &args,
                      const CallSite &caller)
{
    j["frameId"] = frame_id;
    j["class"] = cls;
    j["method"] = method;
    if (this_id)
        j["thisId"] = *this_id;
    j["args"] = values_json(args);
    j["callerClass"] = caller.cls;
    j["callerMethod"] = caller.method;
    j["callerLine"] = caller.line;
}

template <typename E> void read_frame_fields(const Json &j, E &e)
{
    e.frame_id = get_int(j, "frameId");
    e.cls = get_string(j, "class");
    e.method = get_string(j, "method");
    if (auto it = j.find("thisId"); it != j.end() && !it->is_null())
        e.this_id = as_int(*it, "thisId");
    e.args = get_values(j, "args");
    e.caller.cls = get_string(j, "callerClass");
    e.caller.method = get_string(j, "callerMethod");
    e.caller.line = get_int(j, "callerLine");
}

Json event_to_json(const Event &ev)
{
    Json j = Json::object();
    j["type"] = std::string(type_name(ev));
    std::visit(overloaded{
                   [](const VmStart &) {},
                   [&](const MethodEntry &e) { put_frame_fields(j, e.frame_id, e.cls, e.method, e.this_id, e.args, e.caller); },
                   [&](const MethodExit &e) {
                       put_frame_fields(j, e.frame_id, e.cls, e.method, e.this_id, e.args, e.caller);
                       j["returnValue"] = value_to_json(e.return_value);
                   },
                   [&](const VmDeath &e) {
                       j["exitStatus"] = e.exit_status;
                       j["entryCount"] = e.entry_count;
                       if (e.diagnostic)
                           j["diagnostic"] = *e.diagnostic;
                   },
               },
               ev);
    return j;
}

Event event_from_json(const Json &j)
{
    if (!j.is_object())
        throw BadPayload("event must be an object");
    const auto type = get_string(j, "type");
    if (type == "VmStart")
        return VmStart{};
    if (type == "MethodEntry")
    {
        MethodEntry e;
        read_frame_fields(j, e);
        return e;
    }
    if (type == "MethodExit")
    {
        MethodExit e;
        read_frame_fields(j, e);
        e.return_value = value_from_json(field(j, "returnValue"));
        return e;
    }
    if (type == "VmDeath")
    {
        VmDeath e;
        e.exit_status = static_cast<int>(get_int(j, "exitStatus"));
        e.entry_count = get_int(j, "entryCount");
        if (auto it = j.find("diagnostic"); it != j.end() && it->is_string())
            e.diagnostic = it->get<std::string>();
        return e;
    }
    throw BadPayload("unknown event type " + type);
}

void payload_to_json(const Body &body, Json &j)
{
    std::visit(overloaded{
                   [](const ListClasses &) {},
                   [&](const ClassInfo &m) { j["class"] = m.cls; },
                   [&](const SetEventPolicy &m) {
                       j["classes"] = strings_json(m.classes);
                       j["entry"] = m.entry;
                       j["exit"] = m.exit;
                   },
                   [](const Resume &) {},
                   [](const Suspend &) {},
                   [&](const ReadField &m) {
                       j["objId"] = m.obj_id;
                       j["field"] = m.field;
                   },
                   [&](const ReadSeq &m) { j["seqId"] = m.seq_id; },
                   [&](const InvokeMethod &m) {
                       j["objId"] = m.obj_id;
                       j["method"] = m.method;
                       j["args"] = values_json(m.args);
                   },
                   [](const HeapDigest &) {},
                   [](const Disconnect &) {},
                   [](const Ok &) {},
                   [&](const Error &m) {
                       j["code"] = std::string(to_string(m.code));
                       j["msg"] = m.msg;
                   },
                   [&](const ClassList &m) { j["classes"] = strings_json(m.classes); },
                   [&](const ClassInfoReply &m) {
                       j["name"] = m.name;
                       j["kind"] = m.kind;
                       j["base"] = m.base ? Json(*m.base) : Json(nullptr);
                       j["interfaces"] = strings_json(m.interfaces);
                       Json fields = Json::array();
                       for (const auto &f : m.fields)
                           fields.push_back(Json{{"name", f.name}, {"visibility", f.visibility}, {"declaring", f.declaring}});
                       j["fields"] = std::move(fields);
                       Json methods = Json::array();
                       for (const auto &md : m.methods)
                       {
                           Json e = Json::object();
                           e["name"] = md.name;
                           e["params"] = strings_json(md.params);
                           e["pure"] = md.pure;
                           e["visibility"] = md.visibility;
                           e["declaring"] = md.declaring;
                           methods.push_back(std::move(e));
                       }
                       j["methods"] = std::move(methods);
                   },
                   [&](const ValueReply &m) { j["value"] = value_to_json(m.value); },
                   [&](const SeqReply &m) { j["elements"] = values_json(m.elements); },
                   [&](const DigestReply &m) { j["hex64"] = m.hex64; },
                   [&](const EventSet &m) {
                       j["suspend"] = m.suspend;
                       Json events = Json::array();
                       for (const auto &e : m.events)
                           events.push_back(event_to_json(e));
                       j["events"] = std::move(events);
                   },
                   [](const Malformed &) {},
               },
               body);
}

Body payload_from_json(const std::string &type, const Json &j)
{
    if (type == "ListClasses")
        return ListClasses{};
    if (type == "ClassInfo")
        return ClassInfo{get_string(j, "class")};
    if (type == "SetEventPolicy")
        return SetEventPolicy{get_strings(j, "classes"), get_bool(j, "entry"), get_bool(j, "exit")};
    if (type == "Resume")
        return Resume{};
    if (type == "Suspend")
        return Suspend{};
    if (type == "ReadField")
        return ReadField{get_int(j, "objId"), get_string(j, "field")};
    if (type == "ReadSeq")
        return ReadSeq{get_int(j, "seqId")};
    if (type == "InvokeMethod")
        return InvokeMethod{get_int(j, "objId"), get_string(j, "method"), get_values(j, "args")};
    if (type == "HeapDigest")
        return HeapDigest{};
    if (type == "Disconnect")
        return Disconnect{};
    if (type == "Ok")
        return Ok{};
    if (type == "Error")
        return Error{error_code_from_string(get_string(j, "code")), get_string(j, "msg")};
    if (type == "ClassList")
        return ClassList{get_strings(j, "classes")};
    if (type == "ClassInfoReply")
    {
        ClassInfoReply r;
        r.name = get_string(j, "name");
        if (auto it = j.find("kind"); it != j.end() && it->is_string())
            r.kind = it->get<std::string>();
        if (auto it = j.find("base"); it != j.end() && it->is_string())
            r.base = it->get<std::string>();
        r.interfaces = get_strings(j, "interfaces");
        const auto &fields = field(j, "fields");
        const auto &methods = field(j, "methods");
        if (!fields.is_array() || !methods.is_array())
            throw BadPayload("fields and methods must be arrays");
        for (const auto &f : fields)
            r.fields.push_back({get_string(f, "name"), get_string(f, "visibility"),
                                f.contains("declaring") ? get_string(f, "declaring") : r.name});
        for (const auto &m : methods)
            r.methods.push_back({get_string(m, "name"), get_strings(m, "params"), get_bool(m, "pure"),
                                 get_string(m, "visibility"), get_string(m, "declaring")});
        return r;
    }
    if (type == "ValueReply")
        return ValueReply{value_from_json(field(j, "value"))};
    if (type == "SeqReply")
        return SeqReply{get_values(j, "elements")};
    if (type == "DigestReply")
        return DigestReply{get_string(j, "hex64")};
    if (type == "EventSet")
    {
        EventSet s;
        s.suspend = get_bool(j, "suspend");
        const auto &events = field(j, "events");
        if (!events.is_array() || events.empty())
            throw BadPayload("EventSet needs at least one event");
        for (const auto &e : events)
            s.events.push_back(event_from_json(e));
        return s;
    }
    throw BadPayload("unknown message type");
}

} // namespace

Json value_to_json(const WireValue &v)
{
    Json j = Json::object();
    j["k"] = kind_name(v);
    std::visit(overloaded{
                   [](const NullValue &) {},
                   [&](bool b) { j["v"] = b; },
                   [&](std::int64_t i) { j["v"] = i; },
                   [&](double d) {
                       // JSON has no spelling for these; strings keep them lossless.
                       if (std::isnan(d))
                           j["v"] = "nan";
                       else if (std::isinf(d))
                           j["v"] = d > 0 ? "inf" : "-inf";
                       else
                           j["v"] = d;
                   },
                   [&](const std::string &s) { j["v"] = s; },
                   [&](const ObjectRef &r) {
                       j["id"] = r.id;
                       j["class"] = r.cls;
                   },
                   [&](const SeqRef &r) { j["id"] = r.id; },
               },
               v);
    return j;
}

WireValue value_from_json(const Json &j)
{
    if (!j.is_object())
        throw BadPayload("value must be an object");
    const auto k = get_string(j, "k");
    if (k == "null")
        return NullValue{};
    if (k == "bool")
        return bool_value(get_bool(j, "v"));
    if (k == "int")
        return int_value(get_int(j, "v"));
    if (k == "real")
    {
        const auto &f = field(j, "v");
        if (f.is_string())
        {
            const auto s = f.get<std::string>();
            if (s == "nan")
                return real_value(std::numeric_limits<double>::quiet_NaN());
            if (s == "inf")
                return real_value(std::numeric_limits<double>::infinity());
            if (s == "-inf")
                return real_value(-std::numeric_limits<double>::infinity());
            throw BadPayload("bad real spelling " + s);
        }
        if (!f.is_number())
            throw BadPayload("real value must be a number");
        return real_value(f.get<double>());
    }
    if (k == "str")
        return str_value(get_string(j, "v"));
    if (k == "ref")
        return ObjectRef{get_int(j, "id"), get_string(j, "class")};
    if (k == "seq")
        return SeqRef{get_int(j, "id")};
    throw BadPayload("unknown value kind " + k);
}

std::string encode_body(const Message &m)
{
    Json j = Json::object();
    j["type"] = std::string(type_name(m.body));
    if (m.id)
        j["id"] = *m.id;
    payload_to_json(m.body, j);
    return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Message decode_body(std::string_view body)
{
    Json j;
    try
    {
        j = Json::parse(body.begin(), body.end());
    }
    catch (const Json::parse_error &e)
    {
        throw FramingError(std::string("frame body is not valid UTF-8 JSON: ") + e.what());
    }
    if (!j.is_object())
        throw FramingError("frame body is not a JSON object");

    Message m;
    std::string type;
    try
    {
        type = get_string(j, "type");
        if (auto it = j.find("id"); it != j.end())
            m.id = as_int(*it, "id");
        m.body = payload_from_json(type, j);
    }
    catch (const std::invalid_argument &e)
    {
        m.body = Malformed{type, e.what()};
    }
    return m;
}

std::array<std::uint8_t, 4> encode_header(std::size_t body_length)
{
    if (body_length == 0)
        throw FramingError("frame body may not be empty");
    if (body_length > std::numeric_limits<std::uint32_t>::max())
        throw FramingError("frame body exceeds 32-bit length");
    const auto n = static_cast<std::uint32_t>(body_length);
    return {static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16), static_cast<std::uint8_t>(n >> 8),
            static_cast<std::uint8_t>(n)};
}

std::uint32_t decode_header(std::span<const std::uint8_t> header)
{
    if (header.size() != 4)
        throw FramingError("truncated frame header");
    const std::uint32_t n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                            (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
    if (n == 0)
        throw FramingError("zero-length frame");
    return n;
}

std::vector<std::uint8_t> encode_frame(const Message &m)
{
    const auto body = encode_body(m);
    const auto header = encode_header(body.size());
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

Message decode_frame(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4)
        throw FramingError("truncated frame header");
    const auto n = decode_header(bytes.first(4));
    if (bytes.size() - 4 != n)
        throw FramingError("frame length " + std::to_string(n) + " does not match body size " +
                           std::to_string(bytes.size() - 4));
    const auto body = bytes.subspan(4);
    return decode_body(std::string_view(reinterpret_cast<const char *>(body.data()), body.size()));
}

} // namespace mdwp
