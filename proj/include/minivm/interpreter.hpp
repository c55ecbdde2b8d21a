#pragma once

#include "minivm/ast.hpp"
#include "minivm/classes.hpp"
#include "minivm/heap.hpp"
#include "minivm/value.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace minivm
{

class RuntimeError : public std::runtime_error
{
  public:
    RuntimeError(int line, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line), msg_(msg)
    {
    }
    int line() const noexcept { return line_; }
    const std::string &message() const noexcept { return msg_; }

  private:
    int line_;
    std::string msg_;
};

/// A side effect attempted while running under the purity guard.
class PurityGuardError : public RuntimeError
{
  public:
    using RuntimeError::RuntimeError;
};

struct CallSite
{
    std::string cls;
    std::string method;
    int line = 0;
};

struct Activation
{
    std::int64_t frame_id = 0; // 0: no events for this activation
    const ClassInfo *dyn_class = nullptr;
    const ResolvedMethod *method = nullptr; // null for main
    std::optional<Ref> self;
    std::vector<Value> args;
    CallSite caller;
    std::map<std::string, Value> locals;
};

struct EventFilter
{
    bool entry = false;
    bool exit = false;
};

class Interpreter;

/// Observer interface used by the debug agent (and by in-process tests).
class DebugHooks
{
  public:
    virtual ~DebugHooks() = default;
    virtual void on_start(Interpreter &) {}
    virtual EventFilter filter(const ClassInfo &, const ResolvedMethod &) { return {}; }
    virtual void on_entry(Interpreter &, const Activation &) {}
    virtual void on_exit(Interpreter &, const Activation &, const Value &) {}
    /// Method boundaries and loop back-edges.
    virtual void on_safepoint(Interpreter &) {}
    virtual void on_finish(Interpreter &, int, const std::optional<std::string> &) {}
};

struct InvokeOptions
{
    bool suppress_events = false;
    bool purity_guard = false;
};

class Interpreter
{
  public:
    static constexpr int kMaxDepth = 2000;

    Interpreter(const Program &program, const ClassTable &classes, std::ostream &out);

    void set_hooks(DebugHooks *hooks) { hooks_ = hooks; }

    /// Runs main. Returns 0, or 4 after a runtime error (reported on `err`).
    int run(std::ostream &err);

    /// Calls `method` on an object or sequence with dynamic dispatch.
    /// Throws RuntimeError (unknown method, arity, runtime failures).
    Value invoke(const Value &receiver, const std::string &method, const std::vector<Value> &args,
                 InvokeOptions opts = {});

    Heap &heap() { return heap_; }
    const Heap &heap() const { return heap_; }
    const ClassTable &classes() const { return classes_; }
    std::int64_t entry_count() const { return entry_count_; }
    const std::vector<Activation *> &stack() const { return stack_; }

    /// print() formatting.
    std::string render(const Value &v, int depth = 0) const;

  private:
    struct Returned
    {
        Value value;
    };

    Value call(const ClassInfo &cls, const ResolvedMethod &m, std::optional<Ref> self, std::vector<Value> args,
               int line);
    Value seq_builtin(SeqHandle s, const std::string &method, const std::vector<Value> &args, int line);
    Value new_object(const std::string &cls, std::vector<Value> args, int line);
    CallSite call_site(int line) const;
    void guard(int line, const char *what) const;

    bool exec_block(const Block &b, Activation &act, Value &ret);
    bool exec(const Stmt &s, Activation &act, Value &ret);
    Value eval(const Expr &e, Activation &act);
    Value eval_call(const Expr &e, const CallExpr &c, Activation &act);
    Value eval_binary(const Expr &e, const BinaryExpr &b, Activation &act);
    void assign(const Expr &target, Value v, Activation &act, int line);
    HeapObject &deref(const Value &v, int line, const std::string &what);
    void safepoint();

    const Program &program_;
    const ClassTable &classes_;
    std::ostream &out_;
    Heap heap_;
    DebugHooks *hooks_ = nullptr;
    std::vector<Activation *> stack_;
    std::int64_t next_frame_id_ = 1;
    std::int64_t entry_count_ = 0;
    int suppress_depth_ = 0;
    int guard_depth_ = 0;
};

} // namespace minivm
