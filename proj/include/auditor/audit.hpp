#pragma once

#include "auditor/effective.hpp"
#include "auditor/evaluator.hpp"
#include "auditor/report.hpp"
#include "mdwp/session.hpp"

#include <map>
#include <optional>
#include <vector>

namespace auditor
{

struct AuditPolicy
{
    bool fail_fast = false;
    bool check_inv = true;
    bool check_pre = true;
    bool check_post = true;
    bool verify_purity = false; // heap digest around every evaluation
};

struct AuditStats
{
    std::size_t entry_events = 0;
    std::size_t exit_events = 0;
    std::optional<mdwp::VmDeath> death;
    std::size_t digest_checks = 0;
    std::size_t digest_mismatches = 0;
};

/// The event loop: entry and exit events in, report records out.
class Audit
{
  public:
    Audit(TargetAccess &target, const ConstraintTable &table, ReportWriter &report, AuditPolicy policy = {});

    /// Drives `session` from VmStart to VmDeath (or the first FAIL under
    /// fail-fast) and writes the summary line.
    AuditSummary run(mdwp::Session &session);

    // Event handlers; the VM must be suspended at the event.
    void on_entry(const mdwp::MethodEntry &e);
    void on_exit(const mdwp::MethodExit &e);

    /// fail-fast tripped.
    bool stopped() const { return stopped_; }
    const AuditSummary &summary() const { return summary_; }
    AuditStats stats() const;

  private:
    struct Frame
    {
        std::vector<std::vector<Captured>> slots; // per effective post clause
        std::optional<Outcome> pre;
    };

    struct Site
    {
        const char *phase;
        std::string context;
        std::optional<std::int64_t> this_id;
        std::int64_t frame_id;
        mdwp::CallSite caller;
        std::string declaring;
        std::string method;
    };

    EvalEnv env_for(const ClauseRef &c, const std::string &cls, const std::optional<std::int64_t> &this_id,
                    const std::vector<mdwp::WireValue> &args) const;
    void emit(const Site &site, ocl::ClauseKind kind, const std::optional<std::string> &label, std::string expr,
              Verdict v, bool member = false, std::optional<Outcome> entry_pre = std::nullopt);
    void check_invariants(const Site &site, const EffectiveConstraints &ec, const std::string &cls,
                          const std::vector<mdwp::WireValue> &args);

    TargetAccess &target_;
    const ConstraintTable &table_;
    ReportWriter &report_;
    AuditPolicy policy_;
    EffectiveIndex index_;
    Evaluator eval_;
    std::map<std::int64_t, Frame> frames_;
    AuditSummary summary_;
    AuditStats stats_;
    std::int64_t seq_ = 0;
    bool stopped_ = false;
};

/// Exit status for a finished audit: 2 on any FAIL, else 3 on any ERROR, else 0.
int exit_code_for(const AuditSummary &s);

} // namespace auditor
