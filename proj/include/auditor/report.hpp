#pragma once

#include "auditor/blame.hpp"
#include "auditor/evaluator.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace auditor
{

struct AuditRecord
{
    std::int64_t seq = 0;
    std::string phase; // "entry" | "exit"
    std::string context;
    ocl::ClauseKind kind = ocl::ClauseKind::Inv;
    std::optional<std::string> label;
    bool member = false; // one clause of a multi-group precondition
    std::string expr;
    Verdict verdict;
    std::optional<BlameTag> blame;
    std::optional<Outcome> entry_pre; // post records: effective pre at entry
    std::optional<std::int64_t> object_id;
    std::int64_t frame_id = 0;
};

struct AuditSummary
{
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t error = 0;
    bool incomplete = false;

    std::size_t records() const { return pass + fail + error; }
};

class ReportError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// One JSON object per line: header, records, summary.
class ReportWriter
{
  public:
    explicit ReportWriter(std::ostream &out) : out_(out) {}

    void header(const std::string &constraints, const std::string &target);
    void record(const AuditRecord &r);
    void summary(const AuditSummary &s);

    static std::string header_line(const std::string &constraints, const std::string &target);
    static std::string record_line(const AuditRecord &r);
    static std::string summary_line(const AuditSummary &s);

  private:
    void write(const std::string &line);
    std::ostream &out_;
};

} // namespace auditor
