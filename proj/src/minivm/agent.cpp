#include "minivm/agent.hpp"

#include "mdwp/codec.hpp"
#include "minivm/purity.hpp"

#include <chrono>
#include <iostream>

namespace minivm
{

namespace
{

mdwp::Error err(mdwp::ErrorCode code, std::string msg) { return mdwp::Error{code, std::move(msg)}; }

struct BadArg
{
    std::string msg;
};

Value from_wire(const Heap &heap, const mdwp::WireValue &w)
{
    return std::visit(
        [&](const auto &x) -> Value {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, mdwp::NullValue>)
                return Null{};
            else if constexpr (std::is_same_v<T, bool>)
                return make_bool(x);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return make_int(x);
            else if constexpr (std::is_same_v<T, double>)
                return make_real(x);
            else if constexpr (std::is_same_v<T, std::string>)
                return make_str(x);
            else if constexpr (std::is_same_v<T, mdwp::ObjectRef>)
            {
                if (heap.object(x.id) == nullptr)
                    throw BadArg{"no object " + std::to_string(x.id)};
                return Ref{x.id};
            }
            else
            {
                if (heap.seq(x.id) == nullptr)
                    throw BadArg{"no sequence " + std::to_string(x.id)};
                return SeqHandle{x.id};
            }
        },
        w);
}

std::vector<mdwp::WireValue> args_to_wire(const Heap &heap, const std::vector<Value> &args)
{
    std::vector<mdwp::WireValue> out;
    out.reserve(args.size());
    for (const auto &a : args)
        out.push_back(to_wire(heap, a));
    return out;
}

} // namespace

mdwp::WireValue to_wire(const Heap &heap, const Value &v)
{
    return std::visit(
        [&](const auto &x) -> mdwp::WireValue {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Null>)
                return mdwp::NullValue{};
            else if constexpr (std::is_same_v<T, bool>)
                return mdwp::bool_value(x);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return mdwp::int_value(x);
            else if constexpr (std::is_same_v<T, double>)
                return mdwp::real_value(x);
            else if constexpr (std::is_same_v<T, std::string>)
                return mdwp::str_value(x);
            else if constexpr (std::is_same_v<T, Ref>)
            {
                const auto *o = heap.object(x.id);
                return mdwp::ObjectRef{x.id, o ? o->cls->name : std::string()};
            }
            else
                return mdwp::SeqRef{x.id};
        },
        v);
}

Agent::Agent(mdwp::Socket socket, bool suspend_on_start)
    : socket_(std::move(socket)), suspend_on_start_(suspend_on_start)
{
}

void Agent::detach()
{
    socket_.close();
    classes_.clear();
}

void Agent::send_events(bool suspend, mdwp::Event e)
{
    if (!attached())
        return;
    try
    {
        socket_.send_message(mdwp::Message{std::nullopt, mdwp::EventSet{suspend, {std::move(e)}}});
    }
    catch (const std::exception &)
    {
        detach();
    }
}

void Agent::reply(const std::optional<std::int64_t> &id, mdwp::Body body)
{
    try
    {
        socket_.send_message(mdwp::Message{id, std::move(body)});
    }
    catch (const std::exception &)
    {
        detach();
    }
}

void Agent::on_start(Interpreter &vm)
{
    send_events(suspend_on_start_, mdwp::VmStart{});
    if (suspend_on_start_)
        serve(vm);
}

EventFilter Agent::filter(const ClassInfo &cls, const ResolvedMethod &)
{
    if (!attached() || !classes_.count(cls.name))
        return {};
    return {entry_, exit_};
}

void Agent::on_entry(Interpreter &vm, const Activation &act)
{
    mdwp::MethodEntry e;
    e.frame_id = act.frame_id;
    e.cls = act.dyn_class->name;
    e.method = act.method->name;
    if (act.self)
        e.this_id = act.self->id;
    e.args = args_to_wire(vm.heap(), act.args);
    e.caller = {act.caller.cls, act.caller.method, act.caller.line};
    send_events(true, std::move(e));
    serve(vm);
}

void Agent::on_exit(Interpreter &vm, const Activation &act, const Value &ret)
{
    mdwp::MethodExit e;
    e.frame_id = act.frame_id;
    e.cls = act.dyn_class->name;
    e.method = act.method->name;
    if (act.self)
        e.this_id = act.self->id;
    e.args = args_to_wire(vm.heap(), act.args);
    e.caller = {act.caller.cls, act.caller.method, act.caller.line};
    e.return_value = to_wire(vm.heap(), ret);
    send_events(true, std::move(e));
    serve(vm);
}

void Agent::on_safepoint(Interpreter &vm)
{
    // Running: only Suspend and Disconnect are honoured.
    while (attached() && socket_.readable(std::chrono::milliseconds(0)))
    {
        std::optional<mdwp::Message> msg;
        try
        {
            msg = socket_.receive_message();
        }
        catch (const std::exception &)
        {
            detach();
            return;
        }
        if (!msg)
        {
            detach();
            return;
        }
        if (msg->is<mdwp::Suspend>())
        {
            reply(msg->id, mdwp::Ok{});
            serve(vm);
            return;
        }
        if (msg->is<mdwp::Disconnect>())
        {
            reply(msg->id, mdwp::Ok{});
            detach();
            return;
        }
        if (const auto *m = msg->as<mdwp::Malformed>())
            reply(msg->id, err(mdwp::ErrorCode::UnknownType, "unknown message type " + m->type));
        else if (mdwp::is_command(msg->body))
            reply(msg->id, err(mdwp::ErrorCode::NotSuspended, "VM is running"));
        else
            reply(msg->id, err(mdwp::ErrorCode::UnknownType,
                               std::string(mdwp::type_name(msg->body)) + " is not a command"));
    }
}

void Agent::on_finish(Interpreter &vm, int status, const std::optional<std::string> &diag)
{
    send_events(false, mdwp::VmDeath{status, vm.entry_count(), diag});
    detach();
}

void Agent::serve(Interpreter &vm)
{
    while (attached())
    {
        std::optional<mdwp::Message> msg;
        try
        {
            msg = socket_.receive_message();
        }
        catch (const std::exception &)
        {
            detach();
            return;
        }
        if (!msg)
        {
            detach();
            return;
        }
        if (msg->is<mdwp::Resume>())
        {
            reply(msg->id, mdwp::Ok{});
            return;
        }
        if (msg->is<mdwp::Disconnect>())
        {
            reply(msg->id, mdwp::Ok{});
            detach();
            return;
        }
        reply(msg->id, handle(vm, msg->body));
    }
}

mdwp::ClassInfoReply Agent::describe_class(const ClassInfo &info) const
{
    mdwp::ClassInfoReply r;
    r.name = info.name;
    r.kind = info.is_interface ? "interface" : "class";
    if (info.base)
        r.base = info.base->name;
    for (const auto *i : info.interfaces)
        r.interfaces.push_back(i->name);
    for (const auto &f : info.layout)
        r.fields.push_back({f.name, to_string(f.visibility), f.declaring->name});
    for (const auto &m : info.methods)
        r.methods.push_back({m.name, m.params, m.pure, to_string(m.visibility), m.declaring->name});
    return r;
}

mdwp::Body Agent::invoke(Interpreter &vm, const mdwp::InvokeMethod &req)
{
    auto &heap = vm.heap();
    std::vector<Value> args;
    try
    {
        for (const auto &a : req.args)
            args.push_back(from_wire(heap, a));
    }
    catch (const BadArg &b)
    {
        return err(mdwp::ErrorCode::UnknownObject, b.msg);
    }

    Value receiver;
    if (const auto *s = heap.seq(req.obj_id))
    {
        if (is_mutating_seq_method(req.method))
            return err(mdwp::ErrorCode::Purity, "sequence method " + req.method + " mutates");
        if (!is_reading_seq_method(req.method))
            return err(mdwp::ErrorCode::UnknownMethod, "unknown sequence method " + req.method);
        const std::size_t want = req.method == "get" ? 1 : 0;
        if (args.size() != want)
            return err(mdwp::ErrorCode::Arity, req.method + " expects " + std::to_string(want) + " argument(s)");
        (void)s;
        receiver = SeqHandle{req.obj_id};
    }
    else if (const auto *o = heap.object(req.obj_id))
    {
        const auto *m = o->cls->find_method(req.method);
        if (m == nullptr)
            return err(mdwp::ErrorCode::UnknownMethod, "unknown method " + o->cls->name + "." + req.method);
        if (!m->pure)
            return err(mdwp::ErrorCode::Purity, o->cls->name + "." + req.method + " is not pure");
        if (m->params.size() != args.size())
            return err(mdwp::ErrorCode::Arity, o->cls->name + "." + req.method + " expects " +
                                                   std::to_string(m->params.size()) + " argument(s), got " +
                                                   std::to_string(args.size()));
        receiver = Ref{req.obj_id};
    }
    else
        return err(mdwp::ErrorCode::UnknownObject, "no object " + std::to_string(req.obj_id));

    try
    {
        const Value v = vm.invoke(receiver, req.method, args, InvokeOptions{true, true});
        return mdwp::ValueReply{to_wire(heap, v)};
    }
    catch (const PurityGuardError &e)
    {
        return err(mdwp::ErrorCode::Purity, e.message());
    }
    catch (const RuntimeError &e)
    {
        return err(mdwp::ErrorCode::TargetException, e.message());
    }
}

mdwp::Body Agent::handle(Interpreter &vm, const mdwp::Body &request)
{
    auto &heap = vm.heap();
    return std::visit(
        [&](const auto &r) -> mdwp::Body {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, mdwp::ListClasses>)
                return mdwp::ClassList{vm.classes().names()};
            else if constexpr (std::is_same_v<T, mdwp::ClassInfo>)
            {
                const auto *info = vm.classes().find(r.cls);
                if (info == nullptr)
                    return err(mdwp::ErrorCode::UnknownClass, "unknown class " + r.cls);
                return describe_class(*info);
            }
            else if constexpr (std::is_same_v<T, mdwp::SetEventPolicy>)
            {
                classes_ = {r.classes.begin(), r.classes.end()};
                entry_ = r.entry;
                exit_ = r.exit;
                return mdwp::Ok{};
            }
            else if constexpr (std::is_same_v<T, mdwp::Suspend>)
                return mdwp::Ok{};
            else if constexpr (std::is_same_v<T, mdwp::Resume> || std::is_same_v<T, mdwp::Disconnect>)
                return mdwp::Ok{};
            else if constexpr (std::is_same_v<T, mdwp::ReadField>)
            {
                const auto *o = heap.object(r.obj_id);
                if (o == nullptr)
                    return err(mdwp::ErrorCode::UnknownObject, "no object " + std::to_string(r.obj_id));
                const int idx = o->cls->field_index(r.field);
                if (idx < 0)
                    return err(mdwp::ErrorCode::UnknownField, "unknown field " + o->cls->name + "." + r.field);
                return mdwp::ValueReply{to_wire(heap, o->fields[static_cast<std::size_t>(idx)])};
            }
            else if constexpr (std::is_same_v<T, mdwp::ReadSeq>)
            {
                const auto *s = heap.seq(r.seq_id);
                if (s == nullptr)
                    return err(mdwp::ErrorCode::UnknownObject, "no sequence " + std::to_string(r.seq_id));
                return mdwp::SeqReply{args_to_wire(heap, s->items)};
            }
            else if constexpr (std::is_same_v<T, mdwp::InvokeMethod>)
                return invoke(vm, r);
            else if constexpr (std::is_same_v<T, mdwp::HeapDigest>)
                return mdwp::DigestReply{hex64(heap.digest())};
            else if constexpr (std::is_same_v<T, mdwp::Malformed>)
                return err(mdwp::ErrorCode::UnknownType, "unknown message type " + r.type);
            else
                return err(mdwp::ErrorCode::UnknownType, std::string(mdwp::type_name(request)) + " is not a command");
        },
        request);
}

} // namespace minivm
