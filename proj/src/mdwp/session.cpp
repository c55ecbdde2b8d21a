#include "mdwp/session.hpp"

#include "mdwp/codec.hpp"
#include "mdwp/handshake.hpp"

#include <atomic>
#include <charconv>
#include <iostream>
#include <thread>

namespace mdwp
{

namespace
{

std::atomic<std::uint64_t> g_next_session{1};

Socket launch_and_connect(const LaunchTarget &cfg, std::optional<ChildProcess> &child)
{
    const std::uint16_t port = cfg.port != 0 ? cfg.port : pick_free_port();
    child.emplace(cfg.vm_path,
                  std::vector<std::string>{"run", "--debug-listen", std::to_string(port), "--suspend", cfg.program_path},
                  cfg.spawn);
    const auto deadline = std::chrono::steady_clock::now() + cfg.retry_window;
    std::string last;
    for (;;)
    {
        try
        {
            return Socket::connect("127.0.0.1", port);
        }
        catch (const TransportError &e)
        {
            last = e.what();
        }
        if (auto st = child->wait_for(std::chrono::milliseconds(0)))
            throw SpawnError("VM exited with status " + std::to_string(*st) + " before accepting a debugger");
        if (std::chrono::steady_clock::now() >= deadline)
            throw TransportError("VM did not accept a connection within the retry window (" + last + ")");
        std::this_thread::sleep_for(cfg.retry_interval);
    }
}

} // namespace

const MethodMirror *ClassMirror::find_method(const std::string &m) const
{
    for (const auto &md : methods)
        if (md.name == m)
            return &md;
    return nullptr;
}

const FieldDesc *ClassMirror::find_field(const std::string &f) const
{
    for (const auto &fd : fields)
        if (fd.name == f)
            return &fd;
    return nullptr;
}

std::unique_ptr<Session> Session::open(const ConnectorConfig &cfg)
{
    std::unique_ptr<Session> s;
    if (const auto *launch = std::get_if<LaunchTarget>(&cfg))
    {
        std::optional<ChildProcess> child;
        Socket sock = launch_and_connect(*launch, child);
        handshake_connector(sock);
        s = std::make_unique<Session>(std::move(sock), std::move(child));
    }
    else if (const auto *attach = std::get_if<AttachTarget>(&cfg))
    {
        Socket sock = Socket::connect(attach->host, attach->port);
        handshake_connector(sock);
        s = std::make_unique<Session>(std::move(sock));
    }
    else
    {
        const auto &listen = std::get<ListenTarget>(cfg);
        Listener l(listen.port);
        if (listen.on_listening)
            listen.on_listening(l.port());
        auto sock = l.accept(listen.accept_timeout);
        if (!sock)
            throw TransportError("no VM connected to port " + std::to_string(l.port()));
        handshake_acceptor(*sock);
        s = std::make_unique<Session>(std::move(*sock));
    }

    // The VM announces itself first; keep the set for the event loop.
    auto first = s->read_frame();
    const auto *es = first.as<EventSet>();
    if (es == nullptr || es->events.empty() || !std::holds_alternative<VmStart>(es->events.front()))
        throw SessionDead("VM did not start with a VmStart event");
    s->suspended_ = es->suspend;
    s->queue_.push_back(*es);
    return s;
}

Session::Session(Socket socket, std::optional<ChildProcess> child)
    : id_(g_next_session++), socket_(std::move(socket)), child_(std::move(child))
{
    warn_ = [](const std::string &w) { std::cerr << "warning: " << w << "\n"; };
}

Session::~Session()
{
    socket_.close();
    // ChildProcess waits briefly and then kills.
}

void Session::mark_dead(const std::string &why)
{
    alive_ = false;
    socket_.close();
    throw SessionDead(why);
}

void Session::check(const ObjectMirror &obj) const
{
    if (obj.session != id_)
        throw InvalidMirror("mirror belongs to another session");
    if (!alive_)
        throw SessionDead("session is dead");
}

Message Session::read_frame()
{
    if (!alive_)
        throw SessionDead("session is dead");
    std::optional<Message> m;
    try
    {
        m = socket_.receive_message();
    }
    catch (const std::exception &e)
    {
        mark_dead(std::string("transport lost: ") + e.what());
    }
    if (!m)
        mark_dead(saw_death_ ? "VM terminated" : "transport lost: VM closed the connection");
    if (const auto *es = m->as<EventSet>())
        for (const auto &ev : es->events)
            if (std::holds_alternative<VmDeath>(ev))
                saw_death_ = true;
    return std::move(*m);
}

void Session::send_raw(const Message &m)
{
    if (!alive_)
        throw SessionDead("session is dead");
    try
    {
        socket_.send_message(m);
    }
    catch (const TransportError &e)
    {
        mark_dead(std::string("transport lost: ") + e.what());
    }
}

Message Session::receive_raw()
{
    for (;;)
    {
        auto m = read_frame();
        if (const auto *es = m.as<EventSet>())
        {
            queue_.push_back(*es);
            continue;
        }
        return m;
    }
}

Message Session::request(Body command)
{
    Message m{next_id_++, std::move(command)};
    send_raw(m);
    for (;;)
    {
        auto reply = read_frame();
        if (const auto *es = reply.as<EventSet>())
        {
            queue_.push_back(*es);
            continue;
        }
        if (reply.id != m.id)
            mark_dead("reply id " + (reply.id ? std::to_string(*reply.id) : std::string("none")) +
                      " does not match request " + std::to_string(*m.id));
        if (const auto *err = reply.as<Error>())
            throw RemoteError(err->code, err->msg);
        return reply;
    }
}

std::optional<EventSet> Session::next_event_set()
{
    if (!queue_.empty())
    {
        auto es = std::move(queue_.front());
        queue_.pop_front();
        suspended_ = es.suspend;
        return es;
    }
    if (saw_death_)
        return std::nullopt;
    auto m = read_frame();
    auto *es = std::get_if<EventSet>(&m.body);
    if (es == nullptr)
        mark_dead("unexpected " + std::string(type_name(m.body)) + " while waiting for events");
    suspended_ = es->suspend;
    return std::move(*es);
}

std::vector<std::string> Session::list_classes()
{
    auto reply = request(ListClasses{});
    const auto *cl = reply.as<ClassList>();
    if (cl == nullptr)
        mark_dead("expected ClassList");
    return cl->classes;
}

const ClassMirror &Session::class_mirror(const std::string &name)
{
    if (auto it = classes_.find(name); it != classes_.end())
        return it->second;
    auto reply = request(ClassInfo{name});
    const auto *ci = reply.as<ClassInfoReply>();
    if (ci == nullptr)
        mark_dead("expected ClassInfoReply");
    ClassMirror cm{id_, ci->name, ci->kind, ci->base, ci->interfaces, ci->fields, ci->methods};
    return classes_.emplace(name, std::move(cm)).first->second;
}

WireValue Session::get_field(const ObjectMirror &obj, const std::string &field)
{
    check(obj);
    auto reply = request(ReadField{obj.ref.id, field});
    const auto *v = reply.as<ValueReply>();
    if (v == nullptr)
        mark_dead("expected ValueReply");
    return v->value;
}

SeqSnapshot Session::seq_snapshot(const SeqRef &seq)
{
    auto reply = request(ReadSeq{seq.id});
    const auto *r = reply.as<SeqReply>();
    if (r == nullptr)
        mark_dead("expected SeqReply");
    return SeqSnapshot{r->elements};
}

WireValue Session::invoke_pure(const ObjectMirror &obj, const MethodMirror &m, const std::vector<WireValue> &args)
{
    check(obj);
    auto reply = request(InvokeMethod{obj.ref.id, m.name, args});
    const auto *v = reply.as<ValueReply>();
    if (v == nullptr)
        mark_dead("expected ValueReply");
    return v->value;
}

std::uint64_t Session::heap_digest()
{
    auto reply = request(HeapDigest{});
    const auto *d = reply.as<DigestReply>();
    if (d == nullptr)
        mark_dead("expected DigestReply");
    return parse_digest(d->hex64);
}

void Session::set_event_policy(const std::vector<std::string> &classes, bool entry, bool exit)
{
    request(SetEventPolicy{classes, entry, exit});
}

void Session::resume_all()
{
    if (!suspended_)
    {
        warn_("resume requested but the VM is not suspended");
        return;
    }
    try
    {
        request(Resume{});
    }
    catch (const RemoteError &e)
    {
        if (e.code() != ErrorCode::NotSuspended)
            throw;
        warn_("resume requested but the VM is not suspended");
    }
    suspended_ = false;
}

void Session::suspend()
{
    request(Suspend{});
    suspended_ = true;
}

void Session::disconnect()
{
    if (!alive_)
        return;
    try
    {
        request(Disconnect{});
    }
    catch (const SessionDead &)
    {
    }
    alive_ = false;
    socket_.close();
}

std::uint64_t parse_digest(const std::string &hex)
{
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
    if (ec != std::errc{} || p != hex.data() + hex.size() || hex.size() != 16)
        throw std::invalid_argument("bad digest '" + hex + "'");
    return v;
}

} // namespace mdwp
