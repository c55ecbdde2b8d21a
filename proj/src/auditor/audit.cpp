#include "auditor/audit.hpp"

#include "ocl/format.hpp"

namespace auditor
{

namespace
{

// FAIL beats ERROR beats PASS.
Outcome conjoin(Outcome a, Outcome b)
{
    if (a == Outcome::Fail || b == Outcome::Fail)
        return Outcome::Fail;
    if (a == Outcome::Error || b == Outcome::Error)
        return Outcome::Error;
    return Outcome::Pass;
}

std::string group_text(const std::vector<PreGroup> &groups)
{
    std::string out;
    for (const auto &g : groups)
    {
        if (!out.empty())
            out += " or ";
        std::string inner;
        for (const auto &c : g.clauses)
        {
            if (!inner.empty())
                inner += " and ";
            inner += "(" + ocl::format_expr(*c.clause.expr) + ")";
        }
        out += g.clauses.size() == 1 ? inner : "(" + inner + ")";
    }
    return out;
}

} // namespace

int exit_code_for(const AuditSummary &s)
{
    if (s.incomplete)
        return 1;
    if (s.fail > 0)
        return 2;
    if (s.error > 0)
        return 3;
    return 0;
}

Audit::Audit(TargetAccess &target, const ConstraintTable &table, ReportWriter &report, AuditPolicy policy)
    : target_(target), table_(table), report_(report), policy_(policy), index_(table), eval_(target)
{
    eval_.set_verify_purity(policy.verify_purity);
}

AuditStats Audit::stats() const
{
    AuditStats s = stats_;
    s.digest_checks = eval_.digest_checks();
    s.digest_mismatches = eval_.digest_mismatches();
    return s;
}

EvalEnv Audit::env_for(const ClauseRef &c, const std::string &cls, const std::optional<std::int64_t> &this_id,
                       const std::vector<mdwp::WireValue> &args) const
{
    EvalEnv env;
    if (this_id)
        env.self = mdwp::ObjectRef{*this_id, cls};
    for (std::size_t i = 0; i < c.params.size() && i < args.size(); ++i)
        env.params[c.params[i]] = mdwp::to_mirror(args[i]);
    return env;
}

void Audit::emit(const Site &site, ocl::ClauseKind kind, const std::optional<std::string> &label, std::string expr,
                 Verdict v, bool member, std::optional<Outcome> entry_pre)
{
    AuditRecord r;
    r.seq = ++seq_;
    r.phase = site.phase;
    r.context = site.context;
    r.kind = kind;
    r.label = label;
    r.member = member;
    r.expr = std::move(expr);
    if (v.outcome == Outcome::Fail)
        r.blame = attribute_blame(kind, site.caller, site.declaring, site.method);
    r.entry_pre = entry_pre;
    r.object_id = site.this_id;
    r.frame_id = site.frame_id;
    r.verdict = std::move(v);
    report_.record(r);
    if (member)
        return;
    switch (r.verdict.outcome)
    {
    case Outcome::Pass:
        ++summary_.pass;
        break;
    case Outcome::Fail:
        ++summary_.fail;
        if (policy_.fail_fast)
            stopped_ = true;
        break;
    case Outcome::Error:
        ++summary_.error;
        break;
    }
}

void Audit::check_invariants(const Site &site, const EffectiveConstraints &ec, const std::string &cls,
                             const std::vector<mdwp::WireValue> &args)
{
    for (const auto &c : ec.invariants)
    {
        if (stopped_)
            return;
        const auto env = env_for(c, cls, site.this_id, args);
        emit(site, ocl::ClauseKind::Inv, c.clause.label, ocl::format_expr(*c.clause.expr),
             eval_.check(*c.clause.expr, env));
    }
}

void Audit::on_entry(const mdwp::MethodEntry &e)
{
    ++stats_.entry_events;
    if (stopped_)
        return;
    const auto &ec = index_.get(e.cls, e.method);
    if (ec.empty())
        return;
    const auto *m = target_.class_mirror(e.cls).find_method(e.method);
    if (m == nullptr)
        return;
    const Site site{"entry", e.cls + "::" + e.method, e.this_id, e.frame_id, e.caller, m->declaring, e.method};
    const bool observable = m->visibility == "public" && e.method != "init";

    if (policy_.check_inv && observable)
        check_invariants(site, ec, e.cls, e.args);

    Frame frame;
    if (policy_.check_pre && !ec.pre.empty())
    {
        const bool grouped = ec.pre.size() > 1;
        std::optional<Outcome> any;
        Outcome combined = Outcome::Fail;
        std::optional<EvalErrorCode> first_code;
        bool some_pass = false, some_error = false;
        for (const auto &g : ec.pre)
        {
            Outcome group = Outcome::Pass;
            for (const auto &c : g.clauses)
            {
                if (stopped_)
                    return;
                const auto env = env_for(c, e.cls, e.this_id, e.args);
                auto v = eval_.check(*c.clause.expr, env);
                group = conjoin(group, v.outcome);
                if (v.code && !first_code)
                    first_code = v.code;
                emit(site, ocl::ClauseKind::Pre, c.clause.label, ocl::format_expr(*c.clause.expr), std::move(v),
                     grouped);
            }
            some_pass |= group == Outcome::Pass;
            some_error |= group == Outcome::Error;
            any = any ? conjoin(*any, group) : group;
        }
        combined = some_pass ? Outcome::Pass : some_error ? Outcome::Error : Outcome::Fail;
        frame.pre = grouped ? combined : *any;
        if (grouped && !stopped_)
        {
            Verdict v;
            v.outcome = combined;
            if (combined == Outcome::Error)
            {
                v.code = first_code.value_or(EvalErrorCode::TypeMismatch);
                v.detail = "no precondition group passed and at least one could not be evaluated";
            }
            emit(site, ocl::ClauseKind::Pre, std::string("combined"), group_text(ec.pre), std::move(v));
        }
    }

    if (policy_.check_post && !stopped_)
    {
        for (const auto &c : ec.post)
        {
            if (c.chains && !c.chains->empty())
                frame.slots.push_back(eval_.capture(*c.chains, env_for(c, e.cls, e.this_id, e.args)));
            else
                frame.slots.emplace_back();
        }
    }
    frames_[e.frame_id] = std::move(frame);
}

void Audit::on_exit(const mdwp::MethodExit &e)
{
    ++stats_.exit_events;
    auto node = frames_.extract(e.frame_id);
    if (stopped_)
        return;
    const auto &ec = index_.get(e.cls, e.method);
    if (ec.empty())
        return;
    const auto *m = target_.class_mirror(e.cls).find_method(e.method);
    if (m == nullptr)
        return;
    const Site site{"exit", e.cls + "::" + e.method, e.this_id, e.frame_id, e.caller, m->declaring, e.method};
    const Frame *frame = node.empty() ? nullptr : &node.mapped();

    if (policy_.check_post)
    {
        for (std::size_t i = 0; i < ec.post.size(); ++i)
        {
            if (stopped_)
                return;
            const auto &c = ec.post[i];
            auto env = env_for(c, e.cls, e.this_id, e.args);
            env.result = mdwp::to_mirror(e.return_value);
            env.chains = c.chains.get();
            if (frame != nullptr && i < frame->slots.size())
                env.slots = &frame->slots[i];
            emit(site, ocl::ClauseKind::Post, c.clause.label, ocl::format_expr(*c.clause.expr),
                 eval_.check(*c.clause.expr, env), false, frame ? frame->pre : std::nullopt);
        }
    }

    const bool observable = m->visibility == "public";
    if (policy_.check_inv && observable)
        check_invariants(site, ec, e.cls, e.args);
}

AuditSummary Audit::run(mdwp::Session &session)
{
    try
    {
        session.next_event_set(); // VmStart
        if (!session.suspended())
            session.suspend();
        session.set_event_policy(table_.constrained_classes(), true, true);
        session.resume_all();
        while (auto es = session.next_event_set())
        {
            for (const auto &ev : es->events)
            {
                if (const auto *en = std::get_if<mdwp::MethodEntry>(&ev))
                    on_entry(*en);
                else if (const auto *ex = std::get_if<mdwp::MethodExit>(&ev))
                    on_exit(*ex);
                else if (const auto *d = std::get_if<mdwp::VmDeath>(&ev))
                    stats_.death = *d;
                if (stopped_)
                    break;
            }
            if (stopped_)
            {
                session.disconnect();
                break;
            }
            if (es->suspend)
                session.resume_all();
        }
    }
    catch (const mdwp::SessionDead &)
    {
        summary_.incomplete = !stats_.death.has_value();
    }
    report_.summary(summary_);
    return summary_;
}

} // namespace auditor
