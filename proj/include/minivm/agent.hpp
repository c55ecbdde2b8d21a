#pragma once

#include "mdwp/socket.hpp"
#include "minivm/interpreter.hpp"

#include <set>
#include <string>

namespace minivm
{

/// The VM half of MDWP. Attach to an Interpreter with set_hooks(); the socket
/// must already have completed the handshake.
class Agent : public DebugHooks
{
  public:
    Agent(mdwp::Socket socket, bool suspend_on_start);

    void on_start(Interpreter &vm) override;
    EventFilter filter(const ClassInfo &cls, const ResolvedMethod &m) override;
    void on_entry(Interpreter &vm, const Activation &act) override;
    void on_exit(Interpreter &vm, const Activation &act, const Value &ret) override;
    void on_safepoint(Interpreter &vm) override;
    void on_finish(Interpreter &vm, int status, const std::optional<std::string> &diag) override;

    bool attached() const { return socket_.valid(); }

    /// Answers one request as the suspended VM would. Exposed for tests.
    mdwp::Body handle(Interpreter &vm, const mdwp::Body &request);

  private:
    // Runs requests until Resume or detach.
    void serve(Interpreter &vm);
    void send_events(bool suspend, mdwp::Event e);
    void reply(const std::optional<std::int64_t> &id, mdwp::Body body);
    void detach();

    mdwp::Body invoke(Interpreter &vm, const mdwp::InvokeMethod &req);
    mdwp::ClassInfoReply describe_class(const ClassInfo &info) const;

    mdwp::Socket socket_;
    bool suspend_on_start_;
    std::set<std::string> classes_;
    bool entry_ = false;
    bool exit_ = false;
};

mdwp::WireValue to_wire(const Heap &heap, const Value &v);

} // namespace minivm
