#include "auditor/audit.hpp"
#include "auditor/report.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace auditor;

namespace
{

AuditRecord sample()
{
    AuditRecord r;
    r.seq = 3;
    r.phase = "exit";
    r.context = "BoundedStack::pop";
    r.kind = ocl::ClauseKind::Post;
    r.expr = "result = v@pre.last()";
    r.entry_pre = Outcome::Pass;
    r.object_id = 2;
    r.frame_id = 17;
    return r;
}

} // namespace

TEST(Report, PassRecordHasNoBlame)
{
    const std::string expected = R"({"seq":3,"phase":"exit","context":"BoundedStack::pop","kind":"post",)"
                                 R"j("expr":"result = v@pre.last()","verdict":"PASS","entryPre":"PASS",)j"
                                 R"("objectId":2,"frameId":17})";
    EXPECT_EQ(ReportWriter::record_line(sample()), expected);
}

TEST(Report, FailRecordCarriesBlame)
{
    auto r = sample();
    r.kind = ocl::ClauseKind::Pre;
    r.phase = "entry";
    r.entry_pre.reset();
    r.label = "nonEmpty";
    r.verdict = Verdict::fail();
    r.blame = attribute_blame(ocl::ClauseKind::Pre, {"Main", "main", 39}, "BoundedStack", "pop");
    const auto j = nlohmann::json::parse(ReportWriter::record_line(r));
    EXPECT_EQ(j["verdict"], "FAIL");
    EXPECT_EQ(j["label"], "nonEmpty");
    EXPECT_EQ(j["blame"]["party"], "CLIENT");
    EXPECT_EQ(j["blame"]["class"], "Main");
    EXPECT_EQ(j["blame"]["method"], "main");
    EXPECT_EQ(j["blame"]["line"], 39);
    EXPECT_FALSE(j.contains("entryPre"));
}

TEST(Report, ErrorRecordCarriesCodeAndDetail)
{
    auto r = sample();
    r.verdict = Verdict::error({EvalErrorCode::TypeMismatch, "'+' needs numbers"});
    const auto j = nlohmann::json::parse(ReportWriter::record_line(r));
    EXPECT_EQ(j["verdict"], "ERROR");
    EXPECT_EQ(j["errorCode"], "TYPE_MISMATCH");
    EXPECT_EQ(j["detail"], "'+' needs numbers");
    EXPECT_FALSE(j.contains("blame"));
}

TEST(Report, MemberFlag)
{
    auto r = sample();
    r.member = true;
    EXPECT_EQ(nlohmann::json::parse(ReportWriter::record_line(r))["member"], true);
    EXPECT_FALSE(nlohmann::json::parse(ReportWriter::record_line(sample())).contains("member"));
}

TEST(Report, SummaryLine)
{
    AuditSummary s{10, 1, 2, false};
    const std::string expected = R"({"type":"summary","pass":10,"fail":1,"error":2,"records":13})";
    EXPECT_EQ(ReportWriter::summary_line(s), expected);
    s.incomplete = true;
    EXPECT_EQ(nlohmann::json::parse(ReportWriter::summary_line(s))["incomplete"], true);
}

TEST(Report, HeaderNamesThePreconditionRule)
{
    const auto j = nlohmann::json::parse(ReportWriter::header_line("a.ocl", "launch:b.mob"));
    EXPECT_EQ(j["type"], "header");
    EXPECT_EQ(j["constraints"], "a.ocl");
    EXPECT_EQ(j["target"], "launch:b.mob");
    EXPECT_EQ(j["note"], "preconditions use dynamic-chain disjunction");
}

TEST(Report, OneLinePerCallAndFlushed)
{
    std::ostringstream out;
    ReportWriter w(out);
    w.header("c", "t");
    w.record(sample());
    w.summary({1, 0, 0, false});
    const auto text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
    {
        EXPECT_TRUE(nlohmann::json::accept(line)) << line;
    }
}

TEST(Report, WriteFailureIsReported)
{
    std::ostringstream out;
    out.setstate(std::ios::badbit);
    ReportWriter w(out);
    EXPECT_THROW(w.summary({}), ReportError);
}

TEST(Report, ExitCodes)
{
    EXPECT_EQ(exit_code_for({3, 0, 0, false}), 0);
    EXPECT_EQ(exit_code_for({3, 1, 1, false}), 2);
    EXPECT_EQ(exit_code_for({3, 0, 1, false}), 3);
    EXPECT_EQ(exit_code_for({3, 0, 0, true}), 1);
}

TEST(Blame, ClausesKindsMapToParties)
{
    const mdwp::CallSite caller{"Main", "main", 12};
    const auto pre = attribute_blame(ocl::ClauseKind::Pre, caller, "BoundedStack", "push");
    EXPECT_EQ(pre.party, Party::Client);
    EXPECT_EQ(pre.cls, "Main");
    EXPECT_EQ(pre.method, "main");
    EXPECT_EQ(pre.line, std::optional<std::int64_t>(12));
    for (auto k : {ocl::ClauseKind::Post, ocl::ClauseKind::Inv})
    {
        const auto b = attribute_blame(k, caller, "BrokenStack", "pop");
        EXPECT_EQ(b.party, Party::Server);
        EXPECT_EQ(b.cls, "BrokenStack");
        EXPECT_EQ(b.method, "pop");
        EXPECT_FALSE(b.line);
    }
}
