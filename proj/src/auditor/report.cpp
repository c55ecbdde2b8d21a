#include "auditor/report.hpp"

#include "json.hpp"

namespace auditor
{

using Json = nlohmann::ordered_json;

namespace
{

std::string dump(const Json &j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

} // namespace

std::string ReportWriter::header_line(const std::string &constraints, const std::string &target)
{
    Json j;
    j["type"] = "header";
    j["constraints"] = constraints;
    j["target"] = target;
    j["note"] = "preconditions use dynamic-chain disjunction";
    return dump(j);
}

std::string ReportWriter::record_line(const AuditRecord &r)
{
    Json j;
    j["seq"] = r.seq;
    j["phase"] = r.phase;
    j["context"] = r.context;
    j["kind"] = ocl::to_string(r.kind);
    if (r.label)
        j["label"] = *r.label;
    if (r.member)
        j["member"] = true;
    j["expr"] = r.expr;
    j["verdict"] = to_string(r.verdict.outcome);
    if (r.verdict.code)
        j["errorCode"] = to_string(*r.verdict.code);
    if (!r.verdict.detail.empty())
        j["detail"] = r.verdict.detail;
    if (r.blame)
    {
        Json b;
        b["party"] = to_string(r.blame->party);
        b["class"] = r.blame->cls;
        b["method"] = r.blame->method;
        b["line"] = r.blame->line ? Json(*r.blame->line) : Json(nullptr);
        j["blame"] = std::move(b);
    }
    if (r.entry_pre)
        j["entryPre"] = to_string(*r.entry_pre);
    if (r.object_id)
        j["objectId"] = *r.object_id;
    j["frameId"] = r.frame_id;
    return dump(j);
}

std::string ReportWriter::summary_line(const AuditSummary &s)
{
    Json j;
    j["type"] = "summary";
    j["pass"] = s.pass;
    j["fail"] = s.fail;
    j["error"] = s.error;
    j["records"] = s.records();
    if (s.incomplete)
        j["incomplete"] = true;
    return dump(j);
}

void ReportWriter::write(const std::string &line)
{
    out_ << line << '\n';
    out_.flush();
    if (!out_)
        throw ReportError("cannot write the report");
}

void ReportWriter::header(const std::string &constraints, const std::string &target)
{
    write(header_line(constraints, target));
}

void ReportWriter::record(const AuditRecord &r) { write(record_line(r)); }

void ReportWriter::summary(const AuditSummary &s) { write(summary_line(s)); }

} // namespace auditor
