#pragma once

#include "mdwp/messages.hpp"
#include "mdwp/process.hpp"
#include "mdwp/socket.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mdwp
{

// --- connector configuration -------------------------------------------------

struct LaunchTarget
{
    std::string vm_path;
    std::string program_path;
    std::uint16_t port = 0; // 0: pick a free one
    SpawnOptions spawn;
    std::chrono::milliseconds retry_window{5000};
    std::chrono::milliseconds retry_interval{50};
};

struct AttachTarget
{
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
};

struct ListenTarget
{
    std::uint16_t port = 0;
    // Called once the port is bound, before blocking in accept.
    std::function<void(std::uint16_t)> on_listening;
    std::optional<std::chrono::milliseconds> accept_timeout;
};

using ConnectorConfig = std::variant<LaunchTarget, AttachTarget, ListenTarget>;

// --- errors ------------------------------------------------------------------

/// The VM answered a command with Error.
class RemoteError : public std::runtime_error
{
  public:
    RemoteError(ErrorCode code, const std::string &msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code), msg_(msg)
    {
    }
    ErrorCode code() const noexcept { return code_; }
    const std::string &message() const noexcept { return msg_; }

  private:
    ErrorCode code_;
    std::string msg_;
};

/// The transport is gone; every mirror of the session is now invalid.
class SessionDead : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class InvalidMirror : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

// --- mirrors -----------------------------------------------------------------

using MethodMirror = MethodDesc;

struct ClassMirror
{
    std::uint64_t session = 0;
    std::string name;
    std::string kind = "class";
    std::optional<std::string> base;
    std::vector<std::string> interfaces;
    std::vector<FieldDesc> fields;
    std::vector<MethodMirror> methods;

    const MethodMirror *find_method(const std::string &m) const;
    const FieldDesc *find_field(const std::string &f) const;
    bool is_interface() const { return kind == "interface"; }
};

struct ObjectMirror
{
    std::uint64_t session = 0;
    ObjectRef ref;
};

// --- session -----------------------------------------------------------------

class Session
{
  public:
    /// Connects per `cfg`, completes the handshake and reads the VmStart
    /// event set (left queued for next_event_set).
    static std::unique_ptr<Session> open(const ConnectorConfig &cfg);

    Session(Socket socket, std::optional<ChildProcess> child = std::nullopt);
    ~Session();
    Session(const Session &) = delete;
    Session &operator=(const Session &) = delete;

    std::uint64_t id() const noexcept { return id_; }
    bool alive() const noexcept { return alive_; }
    bool suspended() const noexcept { return suspended_; }
    bool ended() const noexcept { return saw_death_; }

    /// Lockstep command/reply. Assigns the id, queues any EventSet that
    /// arrives first. Error replies throw RemoteError.
    Message request(Body command);

    /// Next EventSet in emission order; nullopt once VmDeath has been delivered.
    std::optional<EventSet> next_event_set();

    // Mirror-level services.
    std::vector<std::string> list_classes();
    const ClassMirror &class_mirror(const std::string &name);
    ObjectMirror mirror(const ObjectRef &ref) const { return {id_, ref}; }
    WireValue get_field(const ObjectMirror &obj, const std::string &field);
    SeqSnapshot seq_snapshot(const SeqRef &seq);
    WireValue invoke_pure(const ObjectMirror &obj, const MethodMirror &m, const std::vector<WireValue> &args);
    std::uint64_t heap_digest();
    void set_event_policy(const std::vector<std::string> &classes, bool entry, bool exit);
    void resume_all();
    void suspend();
    void disconnect();

    void set_warning_sink(std::function<void(const std::string &)> sink) { warn_ = std::move(sink); }
    ChildProcess *child() noexcept { return child_ ? &*child_ : nullptr; }
    /// Raw frame write, for conformance tests that need to send odd messages.
    void send_raw(const Message &m);
    /// Raw frame read (events still queue).
    Message receive_raw();

  private:
    Message read_frame();
    [[noreturn]] void mark_dead(const std::string &why);
    void check(const ObjectMirror &obj) const;

    std::uint64_t id_;
    Socket socket_;
    std::optional<ChildProcess> child_;
    std::int64_t next_id_ = 1;
    bool alive_ = true;
    bool suspended_ = false;
    bool saw_death_ = false;
    std::deque<EventSet> queue_;
    std::map<std::string, ClassMirror> classes_;
    std::function<void(const std::string &)> warn_;
};

/// Parses a 16-digit hex digest.
std::uint64_t parse_digest(const std::string &hex);

} // namespace mdwp
