#include "ocl/validate.hpp"

#include <algorithm>

namespace ocl
{

namespace
{

// Identifiers used inside `e` that are not bound by a quantifier within `e`.
void free_idents(const Expr &e, std::vector<std::string> &bound, std::set<std::string> &out)
{
    if (const auto *id = e.as<Ident>())
    {
        if (std::find(bound.begin(), bound.end(), id->name) == bound.end())
            out.insert(id->name);
        return;
    }
    if (const auto *c = e.as<CollectionOp>())
    {
        free_idents(*c->receiver, bound, out);
        if (c->binder)
            bound.push_back(*c->binder);
        for (const auto &a : c->args)
            free_idents(*a, bound, out);
        if (c->binder)
            bound.pop_back();
        return;
    }
    for_each_child(e, [&](const Expr &child) { free_idents(child, bound, out); });
}

bool mentions_result(const Expr &e)
{
    if (e.is<ResultRef>())
        return true;
    bool found = false;
    for_each_child(e, [&](const Expr &child) { found = found || mentions_result(child); });
    return found;
}

class ClauseChecker
{
  public:
    ClauseChecker(const Clause &clause, const ContextDecl &context, const std::set<std::string> *fields)
        : clause_(clause), context_(context), fields_(fields)
    {
    }

    std::vector<Diagnostic> run()
    {
        if (clause_.kind == ClauseKind::Inv && context_.method)
            report(clause_.origin, "inv clause requires a class context, not " + context_.key());
        if (clause_.kind != ClauseKind::Inv && !context_.method)
            report(clause_.origin,
                   std::string(to_string(clause_.kind)) + " clause requires a method context");
        if (clause_.expr)
            walk(*clause_.expr, false, false);
        return std::move(diags_);
    }

  private:
    void report(const SourceSpan &span, std::string msg) { diags_.push_back({span, std::move(msg)}); }

    std::string kind_name() const { return std::string(to_string(clause_.kind)); }

    void check_capture(const Expr &root)
    {
        std::vector<std::string> inner_bound;
        std::set<std::string> free;
        free_idents(root, inner_bound, free);
        for (const auto &name : free)
            if (std::find(scope_.begin(), scope_.end(), name) != scope_.end())
                report(root.span, "@pre navigation cannot use iterator variable `" + name + "`");
        if (mentions_result(root))
            report(root.span, "result is not available to an @pre navigation");
    }

    void walk(const Expr &e, bool is_spine_child, bool in_capture)
    {
        if (clause_.kind == ClauseKind::Post && !in_capture && !is_spine_child && is_postfix(e) &&
            spine_has_at_pre(e))
        {
            check_capture(e);
            in_capture = true;
        }

        if (e.is<ResultRef>() && clause_.kind != ClauseKind::Post)
            report(e.span, "result not allowed in " + kind_name());

        if (const auto *id = e.as<Ident>())
            check_ident(e, id->name);

        if (const auto *p = e.as<AtPre>())
        {
            if (clause_.kind != ClauseKind::Post)
                report(e.span, "@pre not allowed in " + kind_name());
            else if (at_pre_depth_ > 0)
                report(e.span, "@pre may not nest inside another @pre");
            ++at_pre_depth_;
            walk(*p->inner, true, in_capture);
            --at_pre_depth_;
            return;
        }
        if (const auto *c = e.as<Call>())
        {
            if (c->receiver)
                walk(*c->receiver, true, in_capture);
            for (const auto &a : c->args)
                walk(*a, false, in_capture);
            return;
        }
        if (const auto *f = e.as<FieldAccess>())
        {
            if (f->receiver)
                walk(*f->receiver, true, in_capture);
            return;
        }
        if (const auto *c = e.as<CollectionOp>())
        {
            walk(*c->receiver, true, in_capture);
            if (c->binder)
                scope_.push_back(*c->binder);
            for (const auto &a : c->args)
                walk(*a, false, in_capture);
            if (c->binder)
                scope_.pop_back();
            return;
        }
        for_each_child(e, [&](const Expr &child) { walk(child, false, in_capture); });
    }

    void check_ident(const Expr &e, const std::string &name)
    {
        if (std::find(scope_.begin(), scope_.end(), name) != scope_.end())
            return;
        if (context_.has_param(name))
            return;
        if (fields_ == nullptr || fields_->count(name) > 0)
            return;
        report(e.span, "unknown parameter `" + name + "`");
    }

    const Clause &clause_;
    const ContextDecl &context_;
    const std::set<std::string> *fields_;
    std::vector<std::string> scope_;
    int at_pre_depth_ = 0;
    std::vector<Diagnostic> diags_;
};

} // namespace

std::vector<Diagnostic> validate_clause(const Clause &clause, const ContextDecl &context,
                                        const std::set<std::string> *fields)
{
    return ClauseChecker(clause, context, fields).run();
}

} // namespace ocl
