#include "cli/audit_cli.hpp"

#include "CLI11.hpp"
#include "auditor/audit.hpp"
#include "auditor/table.hpp"
#include "cli/version.hpp"
#include "ocl/parser.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <unistd.h>

namespace cli
{

namespace
{

std::string default_vm_path()
{
    if (const char *env = std::getenv("AUDITOR_VM"); env != nullptr && *env != '\0')
        return env;
    std::error_code ec;
    const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec)
    {
        const auto sibling = self.parent_path() / "minivm";
        if (std::filesystem::exists(sibling, ec))
            return sibling.string();
    }
    return "minivm";
}

std::string target_name(const AuditConfig &c)
{
    if (const auto *l = std::get_if<LaunchMode>(&c.target))
        return l->program;
    if (const auto *a = std::get_if<AttachMode>(&c.target))
        return a->host + ":" + std::to_string(a->port);
    return "listen:" + std::to_string(std::get<ListenMode>(c.target).port);
}

} // namespace

std::variant<AuditConfig, int> parse_args(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Checks OCL constraints against a running MiniObj program", "auditor"};
    app.set_version_flag("--version", version_line("auditor"));

    AuditConfig cfg;
    std::string launch, attach, check = "inv,pre,post";
    std::optional<int> listen;
    std::string out_path;
    app.add_option("--constraints", cfg.constraints, "Constraint file")->required();
    auto *l = app.add_option("--launch", launch, "Spawn the VM on this program");
    auto *a = app.add_option("--attach", attach, "Attach to a VM listening at host:port");
    auto *n = app.add_option("--listen", listen, "Wait for a VM to dial this port")->check(CLI::Range(0, 65535));
    l->excludes(a)->excludes(n);
    a->excludes(n);
    app.add_option("--out", out_path, "Report file (default: stdout)");
    app.add_flag("--fail-fast", cfg.fail_fast, "Stop at the first FAIL");
    app.add_option("--check", check, "Clause kinds to check, e.g. pre,post");
    app.add_flag("--strict", cfg.strict, "Treat registration warnings as fatal");
    app.add_flag("--verify-purity", cfg.verify_purity, "Compare heap digests around every evaluation");
    app.add_option("--vm", cfg.vm_path, "minivm executable for --launch (default: $AUDITOR_VM)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, err, err);
        return 1;
    }

    auto usage = [&](const std::string &msg) {
        err << "auditor: " << msg << "\n" << app.help();
        return 1;
    };

    const int modes = (l->count() > 0) + (a->count() > 0) + (n->count() > 0);
    if (modes != 1)
        return usage("exactly one of --launch, --attach or --listen is required");
    if (l->count())
        cfg.target = LaunchMode{launch};
    else if (a->count())
    {
        try
        {
            const auto [host, port] = mdwp::parse_host_port(attach);
            cfg.target = AttachMode{host, port};
        }
        catch (const std::invalid_argument &e)
        {
            return usage(e.what());
        }
    }
    else
        cfg.target = ListenMode{static_cast<std::uint16_t>(*listen)};

    cfg.check_inv = cfg.check_pre = cfg.check_post = false;
    std::stringstream kinds(check);
    for (std::string k; std::getline(kinds, k, ',');)
    {
        if (k == "inv")
            cfg.check_inv = true;
        else if (k == "pre")
            cfg.check_pre = true;
        else if (k == "post")
            cfg.check_post = true;
        else
            return usage("--check: unknown clause kind '" + k + "'");
    }
    if (!cfg.check_inv && !cfg.check_pre && !cfg.check_post)
        return usage("--check needs at least one of inv, pre, post");

    if (!out_path.empty())
        cfg.out = out_path;
    if (cfg.vm_path.empty())
        cfg.vm_path = default_vm_path();
    return cfg;
}

int run(const AuditConfig &config, std::ostream &out, std::ostream &err)
{
    std::ifstream in(config.constraints, std::ios::binary);
    if (!in)
    {
        err << "auditor: cannot read " << config.constraints << "\n";
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();

    ocl::ConstraintFile file;
    try
    {
        file = ocl::parse_constraint_file(text.str(), config.constraints);
    }
    catch (const ocl::SyntaxError &e)
    {
        err << config.constraints << ":" << ocl::to_string(e.span()) << ": " << e.message() << "\n";
        return 1;
    }
    catch (const ocl::ConstraintFileError &e)
    {
        for (const auto &d : e.diagnostics())
            err << config.constraints << ":" << ocl::to_string(d.span) << ": " << d.message << "\n";
        return 1;
    }

    std::ofstream file_out;
    std::ostream *report_stream = &out;
    if (config.out)
    {
        file_out.open(*config.out, std::ios::binary | std::ios::trunc);
        if (!file_out)
        {
            err << "auditor: cannot write " << *config.out << "\n";
            return 1;
        }
        report_stream = &file_out;
    }

    mdwp::ConnectorConfig cc;
    if (const auto *l = std::get_if<LaunchMode>(&config.target))
    {
        mdwp::LaunchTarget t;
        t.vm_path = config.vm_path;
        t.program_path = l->program;
        // Keep the report stream clean: the program's output goes to stderr.
        if (!config.out)
            t.spawn.stdout_fd = STDERR_FILENO;
        cc = t;
    }
    else if (const auto *a = std::get_if<AttachMode>(&config.target))
        cc = mdwp::AttachTarget{a->host, a->port};
    else
    {
        mdwp::ListenTarget t;
        t.port = std::get<ListenMode>(config.target).port;
        t.on_listening = [&err](std::uint16_t port) { err << "auditor: listening on port " << port << std::endl; };
        cc = t;
    }

    std::unique_ptr<mdwp::Session> session;
    try
    {
        session = mdwp::Session::open(cc);
    }
    catch (const std::exception &e)
    {
        err << "auditor: cannot open a debug session: " << e.what() << "\n";
        return 1;
    }
    session->set_warning_sink([&err](const std::string &w) { err << "auditor: warning: " << w << "\n"; });

    try
    {
        auditor::SessionAccess access(*session);
        auto reg = auditor::build_constraint_table(file, access);
        for (const auto &w : reg.warnings)
            err << "auditor: warning: " << w << "\n";
        if (config.strict && !reg.warnings.empty())
        {
            err << "auditor: --strict: " << reg.warnings.size() << " registration warning(s)\n";
            session->disconnect();
            return 1;
        }

        auditor::ReportWriter report(*report_stream);
        report.header(config.constraints, target_name(config));
        auditor::AuditPolicy policy;
        policy.fail_fast = config.fail_fast;
        policy.check_inv = config.check_inv;
        policy.check_pre = config.check_pre;
        policy.check_post = config.check_post;
        policy.verify_purity = config.verify_purity;
        auditor::Audit audit(access, reg.table, report, policy);
        const auto summary = audit.run(*session);

        const auto stats = audit.stats();
        if (stats.death && stats.death->diagnostic)
            err << "auditor: target: " << *stats.death->diagnostic << "\n";
        if (summary.incomplete)
            err << "auditor: the target connection was lost before the program finished\n";
        if (config.verify_purity)
            err << "auditor: purity checks " << stats.digest_checks << ", digest mismatches "
                << stats.digest_mismatches << "\n";
        return auditor::exit_code_for(summary);
    }
    catch (const auditor::ReportError &e)
    {
        err << "auditor: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        err << "auditor: " << e.what() << "\n";
        return 1;
    }
}

int auditor_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    auto parsed = parse_args(argc, argv, out, err);
    if (const int *code = std::get_if<int>(&parsed))
        return *code;
    return run(std::get<AuditConfig>(parsed), out, err);
}

} // namespace cli
