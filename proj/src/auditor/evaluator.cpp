#include "auditor/evaluator.hpp"

#include "ocl/format.hpp"

#include <cstdint>

namespace auditor
{

using mdwp::ValueMirror;
using mdwp::WireValue;

std::string_view to_string(EvalErrorCode code)
{
    switch (code)
    {
    case EvalErrorCode::TypeMismatch:
        return "TYPE_MISMATCH";
    case EvalErrorCode::PurityViolation:
        return "PURITY_VIOLATION";
    case EvalErrorCode::UnknownIdentifier:
        return "UNKNOWN_IDENTIFIER";
    case EvalErrorCode::TargetException:
        return "TARGET_EXCEPTION";
    case EvalErrorCode::CaptureMissing:
        return "CAPTURE_MISSING";
    }
    return "?";
}

std::string_view to_string(Outcome o)
{
    switch (o)
    {
    case Outcome::Pass:
        return "PASS";
    case Outcome::Fail:
        return "FAIL";
    case Outcome::Error:
        return "ERROR";
    }
    return "?";
}

namespace
{

[[noreturn]] void raise(EvalErrorCode code, std::string detail) { throw EvalError{code, std::move(detail)}; }

std::string type_of(const ValueMirror &v)
{
    switch (v.index())
    {
    case 0:
        return "null";
    case 1:
        return "Boolean";
    case 2:
        return "Integer";
    case 3:
        return "Real";
    case 4:
        return "String";
    case 5:
        return std::get<mdwp::ObjectRef>(v).cls;
    default:
        return "Sequence";
    }
}

bool is_seq(const ValueMirror &v)
{
    return std::holds_alternative<mdwp::SeqRef>(v) || std::holds_alternative<mdwp::SeqSnapshot>(v);
}

bool is_num(const ValueMirror &v)
{
    return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

double num(const ValueMirror &v)
{
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return static_cast<double>(*i);
    return std::get<double>(v);
}

ValueMirror int_v(std::int64_t i) { return ValueMirror{std::in_place_type<std::int64_t>, i}; }
ValueMirror real_v(double d) { return ValueMirror{std::in_place_type<double>, d}; }
ValueMirror bool_v(bool b) { return ValueMirror{std::in_place_type<bool>, b}; }

std::int64_t wrap(std::uint64_t u) { return static_cast<std::int64_t>(u); }

EvalError from_remote(const mdwp::RemoteError &e)
{
    switch (e.code())
    {
    case mdwp::ErrorCode::Purity:
        return {EvalErrorCode::PurityViolation, e.message()};
    case mdwp::ErrorCode::Arity:
    case mdwp::ErrorCode::UnknownObject:
        return {EvalErrorCode::TypeMismatch, e.message()};
    case mdwp::ErrorCode::UnknownField:
    case mdwp::ErrorCode::UnknownMethod:
    case mdwp::ErrorCode::UnknownClass:
        return {EvalErrorCode::UnknownIdentifier, e.message()};
    default:
        return {EvalErrorCode::TargetException, e.what()};
    }
}

WireValue to_wire(const ValueMirror &v)
{
    return std::visit(
        [](const auto &x) -> WireValue {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, mdwp::SeqSnapshot>)
                raise(EvalErrorCode::TypeMismatch, "an entry-time Sequence cannot be passed to a method");
            else
                return WireValue{std::in_place_type<T>, x};
        },
        v);
}

} // namespace

const mdwp::ObjectRef &Evaluator::self(const EvalEnv &env) const
{
    if (!env.self)
        raise(EvalErrorCode::UnknownIdentifier, "self is not available here");
    return *env.self;
}

Verdict Evaluator::check(const ocl::Expr &e, const EvalEnv &env)
{
    std::uint64_t before = 0;
    if (verify_purity_)
        before = target_.heap_digest();
    Verdict v;
    try
    {
        Scope scope;
        const auto value = eval(e, env, scope);
        if (const auto *b = std::get_if<bool>(&value))
            v = *b ? Verdict::pass() : Verdict::fail();
        else
            v = Verdict::error({EvalErrorCode::TypeMismatch, "constraint is " + type_of(value) + ", not Boolean"});
    }
    catch (const EvalError &err)
    {
        v = Verdict::error(err);
    }
    if (verify_purity_)
    {
        ++digest_checks_;
        if (target_.heap_digest() != before)
            ++digest_mismatches_;
    }
    return v;
}

ValueMirror Evaluator::eval(const ocl::Expr &e, const EvalEnv &env)
{
    Scope scope;
    return eval(e, env, scope);
}

std::vector<Captured> Evaluator::capture(const ocl::PreChains &chains, const EvalEnv &env)
{
    EvalEnv at_entry = env;
    at_entry.capturing = true;
    at_entry.chains = nullptr;
    at_entry.slots = nullptr;
    std::vector<Captured> out(chains.slot_count, EvalError{EvalErrorCode::CaptureMissing, "slot never captured"});
    std::vector<bool> done(chains.slot_count, false);
    const std::uint64_t before = verify_purity_ ? target_.heap_digest() : 0;
    for (const auto &c : chains.chains)
    {
        if (done[c.slot])
            continue;
        done[c.slot] = true;
        try
        {
            Scope scope;
            auto v = eval(*c.root, at_entry, scope);
            if (const auto *s = std::get_if<mdwp::SeqRef>(&v))
                v = target_.seq_snapshot(*s);
            out[c.slot] = std::move(v);
        }
        catch (const EvalError &err)
        {
            out[c.slot] = err;
        }
        catch (const mdwp::RemoteError &err)
        {
            out[c.slot] = from_remote(err);
        }
    }
    if (verify_purity_)
    {
        ++digest_checks_;
        if (target_.heap_digest() != before)
            ++digest_mismatches_;
    }
    return out;
}

ValueMirror Evaluator::eval(const ocl::Expr &e, const EvalEnv &env, Scope &scope)
{
    if (!env.capturing && env.chains != nullptr)
    {
        for (const auto &c : env.chains->chains)
        {
            if (c.root.get() != &e)
                continue;
            if (env.slots == nullptr || c.slot >= env.slots->size())
                raise(EvalErrorCode::CaptureMissing, "no entry-time value for " + ocl::format_expr(e));
            const auto &slot = (*env.slots)[c.slot];
            if (const auto *err = std::get_if<EvalError>(&slot))
                raise(EvalErrorCode::CaptureMissing, "entry-time capture of " + ocl::format_expr(e) +
                                                         " failed: " + std::string(to_string(err->code)) +
                                                         (err->detail.empty() ? "" : " " + err->detail));
            return std::get<ValueMirror>(slot);
        }
    }

    return std::visit(
        [&](const auto &n) -> ValueMirror {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, ocl::IntLit>)
                return int_v(n.value);
            else if constexpr (std::is_same_v<N, ocl::RealLit>)
                return real_v(n.value);
            else if constexpr (std::is_same_v<N, ocl::StrLit>)
                return ValueMirror{std::in_place_type<std::string>, n.value};
            else if constexpr (std::is_same_v<N, ocl::BoolLit>)
                return bool_v(n.value);
            else if constexpr (std::is_same_v<N, ocl::SelfRef>)
                return self(env);
            else if constexpr (std::is_same_v<N, ocl::ResultRef>)
            {
                if (!env.result)
                    raise(EvalErrorCode::UnknownIdentifier, "result is only available at method exit");
                return *env.result;
            }
            else if constexpr (std::is_same_v<N, ocl::Ident>)
                return eval_ident(n.name, env, scope);
            else if constexpr (std::is_same_v<N, ocl::Call>)
                return eval_call(n, env, scope);
            else if constexpr (std::is_same_v<N, ocl::FieldAccess>)
                return eval_field(n, env, scope);
            else if constexpr (std::is_same_v<N, ocl::AtPre>)
            {
                if (!env.capturing)
                    raise(EvalErrorCode::CaptureMissing, "no entry-time value for " + ocl::format_expr(e));
                return eval(*n.inner, env, scope);
            }
            else if constexpr (std::is_same_v<N, ocl::Unary>)
            {
                if (n.op == ocl::UnaryOp::Not)
                    return bool_v(!eval_bool(*n.operand, env, scope, "not"));
                const auto v = eval(*n.operand, env, scope);
                if (const auto *i = std::get_if<std::int64_t>(&v))
                    return int_v(wrap(0 - static_cast<std::uint64_t>(*i)));
                if (const auto *d = std::get_if<double>(&v))
                    return real_v(-*d);
                raise(EvalErrorCode::TypeMismatch, "unary - requires a number, got " + type_of(v));
            }
            else if constexpr (std::is_same_v<N, ocl::Binary>)
                return eval_binary(n, env, scope);
            else
                return eval_collection(n, env, scope);
        },
        e.node);
}

bool Evaluator::eval_bool(const ocl::Expr &e, const EvalEnv &env, Scope &scope, std::string_view what)
{
    const auto v = eval(e, env, scope);
    if (const auto *b = std::get_if<bool>(&v))
        return *b;
    raise(EvalErrorCode::TypeMismatch, std::string(what) + " requires Boolean, got " + type_of(v));
}

ValueMirror Evaluator::eval_ident(const std::string &name, const EvalEnv &env, const Scope &scope)
{
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == name)
            return it->second;
    if (auto it = env.params.find(name); it != env.params.end())
        return it->second;
    if (env.self)
    {
        const auto &cm = target_.class_mirror(env.self->cls);
        if (cm.find_field(name) != nullptr)
        {
            try
            {
                return mdwp::to_mirror(target_.get_field(*env.self, name));
            }
            catch (const mdwp::RemoteError &err)
            {
                throw from_remote(err);
            }
        }
    }
    raise(EvalErrorCode::UnknownIdentifier, "unknown identifier " + name);
}

ValueMirror Evaluator::eval_field(const ocl::FieldAccess &f, const EvalEnv &env, Scope &scope)
{
    const ValueMirror recv = f.receiver ? eval(*f.receiver, env, scope) : ValueMirror{self(env)};
    const auto *obj = std::get_if<mdwp::ObjectRef>(&recv);
    if (obj == nullptr)
        raise(EvalErrorCode::TypeMismatch, "field " + f.field + " read from " + type_of(recv));
    const auto &cm = target_.class_mirror(obj->cls);
    if (cm.find_field(f.field) == nullptr)
        raise(EvalErrorCode::UnknownIdentifier, obj->cls + " has no field " + f.field);
    try
    {
        return mdwp::to_mirror(target_.get_field(*obj, f.field));
    }
    catch (const mdwp::RemoteError &err)
    {
        throw from_remote(err);
    }
}

ValueMirror Evaluator::eval_call(const ocl::Call &c, const EvalEnv &env, Scope &scope)
{
    const ValueMirror recv = c.receiver ? eval(*c.receiver, env, scope) : ValueMirror{self(env)};

    if (is_seq(recv))
    {
        if (c.method == "add" || c.method == "removeLast" || c.method == "set")
            raise(EvalErrorCode::PurityViolation, "Sequence " + c.method + "() mutates its receiver");
        std::size_t want;
        if (c.method == "size" || c.method == "last")
            want = 0;
        else if (c.method == "get")
            want = 1;
        else
            raise(EvalErrorCode::UnknownIdentifier, "Sequence has no method " + c.method);
        if (c.args.size() != want)
            raise(EvalErrorCode::TypeMismatch, c.method + "() takes " + std::to_string(want) + " argument(s)");
        std::vector<ValueMirror> args;
        for (const auto &a : c.args)
            args.push_back(eval(*a, env, scope));
        const auto items = elements(recv, c.method + "()");
        if (c.method == "size")
            return int_v(static_cast<std::int64_t>(items.size()));
        if (c.method == "last")
        {
            if (items.empty())
                raise(EvalErrorCode::TargetException, "last on empty sequence");
            return mdwp::to_mirror(items.back());
        }
        const auto *i = std::get_if<std::int64_t>(&args[0]);
        if (i == nullptr)
            raise(EvalErrorCode::TypeMismatch, "get() index must be Integer, got " + type_of(args[0]));
        if (*i < 0 || static_cast<std::size_t>(*i) >= items.size())
            raise(EvalErrorCode::TargetException, "index " + std::to_string(*i) + " out of range for sequence of size " +
                                                      std::to_string(items.size()));
        return mdwp::to_mirror(items[static_cast<std::size_t>(*i)]);
    }

    const auto *obj = std::get_if<mdwp::ObjectRef>(&recv);
    if (obj == nullptr)
        raise(EvalErrorCode::TypeMismatch, c.method + "() called on " + type_of(recv));
    const auto &cm = target_.class_mirror(obj->cls);
    const auto *m = cm.find_method(c.method);
    if (m == nullptr)
        raise(EvalErrorCode::UnknownIdentifier, obj->cls + " has no method " + c.method);
    if (!m->pure)
        raise(EvalErrorCode::PurityViolation, obj->cls + "." + c.method + " is not declared pure");
    if (m->params.size() != c.args.size())
        raise(EvalErrorCode::TypeMismatch, obj->cls + "." + c.method + " takes " + std::to_string(m->params.size()) +
                                               " argument(s), got " + std::to_string(c.args.size()));
    std::vector<WireValue> args;
    for (const auto &a : c.args)
        args.push_back(to_wire(eval(*a, env, scope)));
    try
    {
        return mdwp::to_mirror(target_.invoke_pure(*obj, *m, args));
    }
    catch (const mdwp::RemoteError &err)
    {
        throw from_remote(err);
    }
}

std::vector<WireValue> Evaluator::elements(const ValueMirror &v, std::string_view what)
{
    if (const auto *snap = std::get_if<mdwp::SeqSnapshot>(&v))
        return snap->elements;
    if (const auto *s = std::get_if<mdwp::SeqRef>(&v))
    {
        try
        {
            return target_.seq_snapshot(*s).elements;
        }
        catch (const mdwp::RemoteError &err)
        {
            throw from_remote(err);
        }
    }
    raise(EvalErrorCode::TypeMismatch, std::string(what) + " requires a Sequence, got " + type_of(v));
}

bool Evaluator::equal(const ValueMirror &a, const ValueMirror &b, int depth)
{
    if (is_num(a) && is_num(b))
    {
        const auto *ai = std::get_if<std::int64_t>(&a);
        const auto *bi = std::get_if<std::int64_t>(&b);
        if (ai && bi)
            return *ai == *bi;
        return num(a) == num(b);
    }
    const bool an = std::holds_alternative<mdwp::NullValue>(a);
    const bool bn = std::holds_alternative<mdwp::NullValue>(b);
    if (an || bn)
        return an && bn;
    if (is_seq(a) && is_seq(b))
    {
        const auto *ar = std::get_if<mdwp::SeqRef>(&a);
        const auto *br = std::get_if<mdwp::SeqRef>(&b);
        if (ar && br && ar->id == br->id)
            return true;
        if (depth > 32)
            raise(EvalErrorCode::TypeMismatch, "sequence nesting too deep to compare");
        const auto xs = elements(a, "=");
        const auto ys = elements(b, "=");
        if (xs.size() != ys.size())
            return false;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!equal(mdwp::to_mirror(xs[i]), mdwp::to_mirror(ys[i]), depth + 1))
                return false;
        return true;
    }
    if (a.index() != b.index())
        raise(EvalErrorCode::TypeMismatch, "cannot compare " + type_of(a) + " with " + type_of(b));
    if (const auto *ra = std::get_if<mdwp::ObjectRef>(&a))
        return ra->id == std::get<mdwp::ObjectRef>(b).id;
    return a == b;
}

ValueMirror Evaluator::eval_binary(const ocl::Binary &b, const EvalEnv &env, Scope &scope)
{
    using Op = ocl::BinaryOp;
    const std::string op_name(ocl::to_string(b.op));
    switch (b.op)
    {
    case Op::And:
        return bool_v(eval_bool(*b.lhs, env, scope, op_name) && eval_bool(*b.rhs, env, scope, op_name));
    case Op::Or:
        return bool_v(eval_bool(*b.lhs, env, scope, op_name) || eval_bool(*b.rhs, env, scope, op_name));
    case Op::Implies:
        return bool_v(!eval_bool(*b.lhs, env, scope, op_name) || eval_bool(*b.rhs, env, scope, op_name));
    case Op::Xor: {
        const bool l = eval_bool(*b.lhs, env, scope, op_name);
        return bool_v(l != eval_bool(*b.rhs, env, scope, op_name));
    }
    default:
        break;
    }

    const auto l = eval(*b.lhs, env, scope);
    const auto r = eval(*b.rhs, env, scope);
    if (b.op == Op::Eq)
        return bool_v(equal(l, r));
    if (b.op == Op::Ne)
        return bool_v(!equal(l, r));

    if (b.op == Op::Add && std::holds_alternative<std::string>(l) && std::holds_alternative<std::string>(r))
        return ValueMirror{std::in_place_type<std::string>, std::get<std::string>(l) + std::get<std::string>(r)};
    if (!is_num(l) || !is_num(r))
        raise(EvalErrorCode::TypeMismatch,
              "operator " + op_name + " requires numbers, got " + type_of(l) + " and " + type_of(r));

    const auto *li = std::get_if<std::int64_t>(&l);
    const auto *ri = std::get_if<std::int64_t>(&r);
    if (li && ri)
    {
        const auto x = static_cast<std::uint64_t>(*li), y = static_cast<std::uint64_t>(*ri);
        switch (b.op)
        {
        case Op::Lt:
            return bool_v(*li < *ri);
        case Op::Le:
            return bool_v(*li <= *ri);
        case Op::Gt:
            return bool_v(*li > *ri);
        case Op::Ge:
            return bool_v(*li >= *ri);
        case Op::Add:
            return int_v(wrap(x + y));
        case Op::Sub:
            return int_v(wrap(x - y));
        case Op::Mul:
            return int_v(wrap(x * y));
        default:
            break; // Div is always Real
        }
    }
    const double x = num(l), y = num(r);
    switch (b.op)
    {
    case Op::Lt:
        return bool_v(x < y);
    case Op::Le:
        return bool_v(x <= y);
    case Op::Gt:
        return bool_v(x > y);
    case Op::Ge:
        return bool_v(x >= y);
    case Op::Add:
        return real_v(x + y);
    case Op::Sub:
        return real_v(x - y);
    case Op::Mul:
        return real_v(x * y);
    case Op::Div:
        return real_v(x / y);
    default:
        break;
    }
    raise(EvalErrorCode::TypeMismatch, "unsupported operator " + op_name);
}

ValueMirror Evaluator::eval_collection(const ocl::CollectionOp &c, const EvalEnv &env, Scope &scope)
{
    using K = ocl::CollectionOpKind;
    const auto recv = eval(*c.receiver, env, scope);
    const std::string what = "->" + std::string(ocl::to_string(c.op)) + "()";
    const auto items = elements(recv, what);
    switch (c.op)
    {
    case K::Size:
        return int_v(static_cast<std::int64_t>(items.size()));
    case K::IsEmpty:
        return bool_v(items.empty());
    case K::NotEmpty:
        return bool_v(!items.empty());
    case K::Includes: {
        const auto x = eval(*c.args.at(0), env, scope);
        for (const auto &item : items)
            if (equal(mdwp::to_mirror(item), x))
                return bool_v(true);
        return bool_v(false);
    }
    case K::At: {
        const auto i = eval(*c.args.at(0), env, scope);
        const auto *n = std::get_if<std::int64_t>(&i);
        if (n == nullptr)
            raise(EvalErrorCode::TypeMismatch, what + " index must be Integer, got " + type_of(i));
        if (*n < 1 || static_cast<std::size_t>(*n) > items.size())
            raise(EvalErrorCode::TypeMismatch, what + " index " + std::to_string(*n) +
                                                   " outside 1.." + std::to_string(items.size()));
        return mdwp::to_mirror(items[static_cast<std::size_t>(*n - 1)]);
    }
    case K::ForAll:
    case K::Exists: {
        const bool forall = c.op == K::ForAll;
        for (const auto &item : items)
        {
            scope.emplace_back(*c.binder, mdwp::to_mirror(item));
            const bool v = eval_bool(*c.args.at(0), env, scope, what);
            scope.pop_back();
            if (v != forall)
                return bool_v(!forall);
        }
        return bool_v(forall);
    }
    }
    raise(EvalErrorCode::TypeMismatch, "unsupported collection operation");
}

} // namespace auditor
