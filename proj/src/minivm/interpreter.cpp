#include "minivm/interpreter.hpp"

#include "minivm/purity.hpp"

#include <cmath>

namespace minivm
{

namespace
{

struct StackGuard
{
    std::vector<Activation *> &stack;
    StackGuard(std::vector<Activation *> &s, Activation *a) : stack(s) { stack.push_back(a); }
    ~StackGuard() { stack.pop_back(); }
};

struct DepthGuard
{
    int &depth;
    bool active;
    DepthGuard(int &d, bool on) : depth(d), active(on)
    {
        if (active)
            ++depth;
    }
    ~DepthGuard()
    {
        if (active)
            --depth;
    }
};

std::int64_t wrap_add(std::int64_t a, std::int64_t b)
{
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b)
{
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b)
{
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

bool as_bool(const Value &v, int line, const char *what)
{
    if (const auto *b = std::get_if<bool>(&v))
        return *b;
    throw RuntimeError(line, std::string(what) + " must be Bool, got " + type_name(v));
}

bool is_numeric(const Value &v)
{
    return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

double as_real(const Value &v)
{
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return static_cast<double>(*i);
    return std::get<double>(v);
}

std::int64_t as_index(const Value &v, int line)
{
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return *i;
    throw RuntimeError(line, std::string("sequence index must be Int, got ") + type_name(v));
}

} // namespace

Interpreter::Interpreter(const Program &program, const ClassTable &classes, std::ostream &out)
    : program_(program), classes_(classes), out_(out)
{
}

int Interpreter::run(std::ostream &err)
{
    int status = 0;
    std::optional<std::string> diagnostic;
    if (hooks_)
        hooks_->on_start(*this);
    try
    {
        Activation main;
        main.caller = {"Main", "main", program_.main_line};
        StackGuard g(stack_, &main);
        Value ret;
        exec_block(program_.main_body, main, ret);
    }
    catch (const RuntimeError &e)
    {
        status = 4;
        diagnostic = "runtime error at line " + std::to_string(e.line()) + ": " + e.message();
        out_.flush();
        err << *diagnostic << "\n";
    }
    out_.flush();
    if (hooks_)
        hooks_->on_finish(*this, status, diagnostic);
    return status;
}

CallSite Interpreter::call_site(int line) const
{
    if (stack_.empty() || stack_.back()->method == nullptr)
        return {"Main", "main", line};
    const auto *m = stack_.back()->method;
    return {m->declaring->name, m->name, line};
}

void Interpreter::guard(int line, const char *what) const
{
    if (guard_depth_ > 0)
        throw PurityGuardError(line, std::string(what) + " is not allowed during a pure invocation");
}

void Interpreter::safepoint()
{
    if (hooks_ && suppress_depth_ == 0)
        hooks_->on_safepoint(*this);
}

Value Interpreter::invoke(const Value &receiver, const std::string &method, const std::vector<Value> &args,
                          InvokeOptions opts)
{
    DepthGuard s(suppress_depth_, opts.suppress_events);
    DepthGuard g(guard_depth_, opts.purity_guard);
    const int line = stack_.empty() ? 0 : stack_.back()->caller.line;
    if (const auto *sh = std::get_if<SeqHandle>(&receiver))
        return seq_builtin(*sh, method, args, line);
    const auto *r = std::get_if<Ref>(&receiver);
    if (r == nullptr)
        throw RuntimeError(line, std::string("cannot call ") + method + " on " + type_name(receiver));
    auto &obj = deref(receiver, line, method);
    const auto *m = obj.cls->find_method(method);
    if (m == nullptr)
        throw RuntimeError(line, "unknown method " + obj.cls->name + "." + method);
    return call(*obj.cls, *m, *r, args, line);
}

Value Interpreter::call(const ClassInfo &cls, const ResolvedMethod &m, std::optional<Ref> self, std::vector<Value> args,
                        int line)
{
    if (args.size() != m.params.size())
        throw RuntimeError(line, cls.name + "." + m.name + " expects " + std::to_string(m.params.size()) +
                                     " argument(s), got " + std::to_string(args.size()));
    if (stack_.size() >= kMaxDepth)
        throw RuntimeError(line, "stack overflow");
    if (m.def == nullptr)
        throw RuntimeError(line, "no body for " + cls.name + "." + m.name);

    Activation act;
    act.dyn_class = &cls;
    act.method = &m;
    act.self = self;
    act.args = args;
    act.caller = call_site(line);
    for (std::size_t i = 0; i < args.size(); ++i)
        act.locals[m.params[i]] = args[i];

    EventFilter f;
    if (hooks_ && suppress_depth_ == 0)
        f = hooks_->filter(cls, m);
    if (f.entry || f.exit)
        act.frame_id = next_frame_id_++;

    StackGuard g(stack_, &act);
    safepoint();
    if (f.entry)
    {
        ++entry_count_;
        hooks_->on_entry(*this, act);
    }
    Value ret = Null{};
    exec_block(m.def->body, act, ret);
    safepoint();
    if (f.exit)
        hooks_->on_exit(*this, act, ret);
    return ret;
}

HeapObject &Interpreter::deref(const Value &v, int line, const std::string &what)
{
    if (const auto *r = std::get_if<Ref>(&v))
    {
        if (auto *o = heap_.object(r->id))
            return *o;
        throw RuntimeError(line, "dangling reference " + std::to_string(r->id));
    }
    if (std::holds_alternative<Null>(v))
        throw RuntimeError(line, "null receiver for " + what);
    throw RuntimeError(line, std::string("expected an object for ") + what + ", got " + type_name(v));
}

Value Interpreter::seq_builtin(SeqHandle s, const std::string &method, const std::vector<Value> &args, int line)
{
    auto *seq = heap_.seq(s.id);
    if (seq == nullptr)
        throw RuntimeError(line, "dangling sequence " + std::to_string(s.id));
    auto arity = [&](std::size_t n) {
        if (args.size() != n)
            throw RuntimeError(line, method + " expects " + std::to_string(n) + " argument(s), got " +
                                         std::to_string(args.size()));
    };
    auto &items = seq->items;
    auto check_index = [&](std::int64_t i) {
        if (i < 0 || static_cast<std::size_t>(i) >= items.size())
            throw RuntimeError(line, "index " + std::to_string(i) + " out of range for sequence of size " +
                                         std::to_string(items.size()));
        return static_cast<std::size_t>(i);
    };
    if (method == "size")
    {
        arity(0);
        return make_int(static_cast<std::int64_t>(items.size()));
    }
    if (method == "last")
    {
        arity(0);
        if (items.empty())
            throw RuntimeError(line, "last on empty sequence");
        return items.back();
    }
    if (method == "get")
    {
        arity(1);
        return items[check_index(as_index(args[0], line))];
    }
    if (method == "add")
    {
        arity(1);
        guard(line, "add");
        items.push_back(args[0]);
        return Null{};
    }
    if (method == "removeLast")
    {
        arity(0);
        guard(line, "removeLast");
        if (items.empty())
            throw RuntimeError(line, "removeLast on empty sequence");
        Value v = items.back();
        items.pop_back();
        return v;
    }
    if (method == "set")
    {
        arity(2);
        guard(line, "set");
        items[check_index(as_index(args[0], line))] = args[1];
        return Null{};
    }
    throw RuntimeError(line, "unknown sequence method " + method);
}

Value Interpreter::new_object(const std::string &cls_name, std::vector<Value> args, int line)
{
    const auto *cls = classes_.find(cls_name);
    if (cls == nullptr || cls->is_interface)
        throw RuntimeError(line, "unknown class " + cls_name);
    guard(line, "new");
    Ref r = heap_.new_object(*cls);
    if (const auto *init = cls->find_method("init"))
        call(*cls, *init, r, std::move(args), line);
    else if (!args.empty())
        throw RuntimeError(line, cls_name + " has no init taking " + std::to_string(args.size()) + " argument(s)");
    return r;
}

bool Interpreter::exec_block(const Block &b, Activation &act, Value &ret)
{
    for (const auto &s : b)
        if (exec(*s, act, ret))
            return true;
    return false;
}

bool Interpreter::exec(const Stmt &s, Activation &act, Value &ret)
{
    if (const auto *a = s.as<AssignStmt>())
    {
        assign(*a->target, eval(*a->value, act), act, s.line);
        return false;
    }
    if (const auto *i = s.as<IfStmt>())
    {
        if (as_bool(eval(*i->cond, act), s.line, "if condition"))
            return exec_block(i->then_block, act, ret);
        return exec_block(i->else_block, act, ret);
    }
    if (const auto *w = s.as<WhileStmt>())
    {
        while (as_bool(eval(*w->cond, act), s.line, "while condition"))
        {
            if (exec_block(w->body, act, ret))
                return true;
            safepoint();
        }
        return false;
    }
    if (const auto *r = s.as<ReturnStmt>())
    {
        ret = r->value ? eval(*r->value, act) : Value{Null{}};
        return true;
    }
    eval(*std::get<ExprStmt>(s.node).expr, act);
    return false;
}

void Interpreter::assign(const Expr &target, Value v, Activation &act, int line)
{
    if (const auto *n = target.as<NameExpr>())
    {
        if (auto it = act.locals.find(n->name); it != act.locals.end())
        {
            it->second = std::move(v);
            return;
        }
        if (act.self)
        {
            auto &obj = *heap_.object(act.self->id);
            const int idx = obj.cls->field_index(n->name);
            if (idx >= 0)
            {
                guard(line, "field assignment");
                obj.fields[static_cast<std::size_t>(idx)] = std::move(v);
                return;
            }
        }
        act.locals[n->name] = std::move(v);
        return;
    }
    const auto &f = std::get<FieldExpr>(target.node);
    const Value recv = eval(*f.receiver, act);
    auto &obj = deref(recv, line, "field " + f.field);
    const int idx = obj.cls->field_index(f.field);
    if (idx < 0)
        throw RuntimeError(line, "unknown field " + obj.cls->name + "." + f.field);
    if (obj.cls->layout[static_cast<std::size_t>(idx)].visibility == Visibility::Private && !f.receiver->as<SelfExpr>())
        throw RuntimeError(line, "field " + f.field + " of " + obj.cls->name + " is private");
    guard(line, "field assignment");
    obj.fields[static_cast<std::size_t>(idx)] = std::move(v);
}

Value Interpreter::eval(const Expr &e, Activation &act)
{
    const int line = e.line;
    if (const auto *i = e.as<IntLit>())
        return make_int(i->value);
    if (const auto *r = e.as<RealLit>())
        return make_real(r->value);
    if (const auto *s = e.as<StrLit>())
        return make_str(s->value);
    if (const auto *b = e.as<BoolLit>())
        return make_bool(b->value);
    if (e.as<NullLit>())
        return Null{};
    if (e.as<SelfExpr>())
    {
        if (!act.self)
            throw RuntimeError(line, "self used outside a method");
        return *act.self;
    }
    if (const auto *n = e.as<NameExpr>())
    {
        if (auto it = act.locals.find(n->name); it != act.locals.end())
            return it->second;
        if (act.self)
        {
            const auto &obj = *heap_.object(act.self->id);
            const int idx = obj.cls->field_index(n->name);
            if (idx >= 0)
                return obj.fields[static_cast<std::size_t>(idx)];
        }
        throw RuntimeError(line, "unknown variable " + n->name);
    }
    if (const auto *n = e.as<NewExpr>())
    {
        std::vector<Value> args;
        for (const auto &a : n->args)
            args.push_back(eval(*a, act));
        return new_object(n->cls, std::move(args), line);
    }
    if (const auto *c = e.as<CallExpr>())
        return eval_call(e, *c, act);
    if (const auto *f = e.as<FieldExpr>())
    {
        const Value recv = eval(*f->receiver, act);
        auto &obj = deref(recv, line, "field " + f->field);
        const int idx = obj.cls->field_index(f->field);
        if (idx < 0)
            throw RuntimeError(line, "unknown field " + obj.cls->name + "." + f->field);
        if (obj.cls->layout[static_cast<std::size_t>(idx)].visibility == Visibility::Private &&
            !f->receiver->as<SelfExpr>())
            throw RuntimeError(line, "field " + f->field + " of " + obj.cls->name + " is private");
        return obj.fields[static_cast<std::size_t>(idx)];
    }
    if (const auto *u = e.as<UnaryExpr>())
    {
        const Value v = eval(*u->operand, act);
        if (u->op == UnOp::Not)
            return make_bool(!as_bool(v, line, "operand of !"));
        if (const auto *i = std::get_if<std::int64_t>(&v))
            return make_int(wrap_sub(0, *i));
        if (const auto *d = std::get_if<double>(&v))
            return make_real(-*d);
        throw RuntimeError(line, std::string("cannot negate ") + type_name(v));
    }
    return eval_binary(e, std::get<BinaryExpr>(e.node), act);
}

Value Interpreter::eval_call(const Expr &e, const CallExpr &c, Activation &act)
{
    const int line = e.line;
    if (!c.receiver)
    {
        if (c.method == "seq")
        {
            if (!c.args.empty())
                throw RuntimeError(line, "seq expects 0 arguments");
            guard(line, "seq");
            return heap_.new_seq();
        }
        if (c.method == "print")
        {
            if (c.args.size() != 1)
                throw RuntimeError(line, "print expects 1 argument");
            const Value v = eval(*c.args[0], act);
            guard(line, "print");
            out_ << render(v) << "\n";
            return Null{};
        }
        if (c.method == "fail")
        {
            std::string msg = "fail";
            if (!c.args.empty())
                msg = render(eval(*c.args[0], act));
            throw RuntimeError(line, msg);
        }
    }

    Value recv;
    if (c.receiver)
        recv = eval(*c.receiver, act);
    else if (act.self)
        recv = *act.self;
    else
        throw RuntimeError(line, "unknown function " + c.method);

    std::vector<Value> args;
    for (const auto &a : c.args)
        args.push_back(eval(*a, act));

    if (const auto *sh = std::get_if<SeqHandle>(&recv))
        return seq_builtin(*sh, c.method, args, line);
    if (!std::holds_alternative<Ref>(recv))
    {
        if (std::holds_alternative<Null>(recv))
            throw RuntimeError(line, "null receiver for call to " + c.method);
        throw RuntimeError(line, "cannot call " + c.method + " on " + type_name(recv));
    }
    auto &obj = deref(recv, line, c.method);
    const auto *m = obj.cls->find_method(c.method);
    if (m == nullptr)
        throw RuntimeError(line, "unknown method " + obj.cls->name + "." + c.method);
    const bool via_self = !c.receiver || c.receiver->as<SelfExpr>();
    if (m->visibility == Visibility::Private && !via_self)
        throw RuntimeError(line, "method " + c.method + " of " + obj.cls->name + " is private");
    return call(*obj.cls, *m, std::get<Ref>(recv), std::move(args), line);
}

Value Interpreter::eval_binary(const Expr &e, const BinaryExpr &b, Activation &act)
{
    const int line = e.line;
    if (b.op == BinOp::And)
        return make_bool(as_bool(eval(*b.lhs, act), line, "operand of &&") &&
                         as_bool(eval(*b.rhs, act), line, "operand of &&"));
    if (b.op == BinOp::Or)
        return make_bool(as_bool(eval(*b.lhs, act), line, "operand of ||") ||
                         as_bool(eval(*b.rhs, act), line, "operand of ||"));

    const Value l = eval(*b.lhs, act);
    const Value r = eval(*b.rhs, act);
    switch (b.op)
    {
    case BinOp::Eq:
        return make_bool(values_equal(l, r));
    case BinOp::Ne:
        return make_bool(!values_equal(l, r));
    default:
        break;
    }

    if (b.op == BinOp::Add && (std::holds_alternative<std::string>(l) || std::holds_alternative<std::string>(r)))
        return make_str(render(l) + render(r));

    if (!is_numeric(l) || !is_numeric(r))
        throw RuntimeError(line, std::string("numeric operands required, got ") + type_name(l) + " and " + type_name(r));

    const auto *li = std::get_if<std::int64_t>(&l);
    const auto *ri = std::get_if<std::int64_t>(&r);
    if (li && ri)
    {
        const std::int64_t x = *li, y = *ri;
        switch (b.op)
        {
        case BinOp::Lt:
            return make_bool(x < y);
        case BinOp::Le:
            return make_bool(x <= y);
        case BinOp::Gt:
            return make_bool(x > y);
        case BinOp::Ge:
            return make_bool(x >= y);
        case BinOp::Add:
            return make_int(wrap_add(x, y));
        case BinOp::Sub:
            return make_int(wrap_sub(x, y));
        case BinOp::Mul:
            return make_int(wrap_mul(x, y));
        case BinOp::Div:
        case BinOp::Mod:
            if (y == 0)
                throw RuntimeError(line, "division by zero");
            if (y == -1)
                return make_int(b.op == BinOp::Div ? wrap_sub(0, x) : 0);
            return make_int(b.op == BinOp::Div ? x / y : x % y);
        default:
            break;
        }
    }
    const double x = as_real(l), y = as_real(r);
    switch (b.op)
    {
    case BinOp::Lt:
        return make_bool(x < y);
    case BinOp::Le:
        return make_bool(x <= y);
    case BinOp::Gt:
        return make_bool(x > y);
    case BinOp::Ge:
        return make_bool(x >= y);
    case BinOp::Add:
        return make_real(x + y);
    case BinOp::Sub:
        return make_real(x - y);
    case BinOp::Mul:
        return make_real(x * y);
    case BinOp::Div:
        return make_real(x / y);
    case BinOp::Mod:
        return make_real(std::fmod(x, y));
    default:
        break;
    }
    throw RuntimeError(line, "bad operator");
}

std::string Interpreter::render(const Value &v, int depth) const
{
    if (std::holds_alternative<Null>(v))
        return "null";
    if (const auto *b = std::get_if<bool>(&v))
        return *b ? "true" : "false";
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    if (const auto *d = std::get_if<double>(&v))
        return format_real(*d);
    if (const auto *s = std::get_if<std::string>(&v))
        return *s;
    if (const auto *r = std::get_if<Ref>(&v))
    {
        const auto *o = heap_.object(r->id);
        return (o ? o->cls->name : std::string("?")) + "@" + std::to_string(r->id);
    }
    const auto &sh = std::get<SeqHandle>(v);
    const auto *seq = heap_.seq(sh.id);
    if (seq == nullptr)
        return "[?]";
    if (depth > 8)
        return "[...]";
    std::string out = "[";
    for (std::size_t i = 0; i < seq->items.size(); ++i)
    {
        if (i)
            out += ", ";
        out += render(seq->items[i], depth + 1);
    }
    return out + "]";
}

} // namespace minivm
