#include "cli/minivm_cli.hpp"

#include "CLI11.hpp"
#include "cli/version.hpp"
#include "mdwp/handshake.hpp"
#include "minivm/agent.hpp"
#include "minivm/parser.hpp"
#include "minivm/purity.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

namespace cli
{

namespace
{

std::optional<std::string> read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Dials the debugger, retrying briefly in case it is still binding.
mdwp::Socket dial(const std::string &host, std::uint16_t port)
{
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
    for (;;)
    {
        try
        {
            return mdwp::Socket::connect(host, port);
        }
        catch (const mdwp::TransportError &)
        {
            if (std::chrono::steady_clock::now() >= deadline)
                throw;
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
        }
    }
}

} // namespace

int minivm_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"MiniObj interpreter with an MDWP debug agent", "minivm"};
    app.set_version_flag("--version", version_line("minivm"));
    app.require_subcommand(1);

    std::string file;
    std::optional<int> listen_port;
    std::string connect_to;
    bool suspend = false;
    auto *run = app.add_subcommand("run", "Run a MiniObj program");
    run->add_option("file", file, "Program source (.mob)")->required();
    auto *listen_opt = run->add_option("--debug-listen", listen_port, "Accept a debugger on this port (0: any)")
                           ->check(CLI::Range(0, 65535));
    auto *connect_opt = run->add_option("--debug-connect", connect_to, "Dial a listening debugger at host:port");
    listen_opt->excludes(connect_opt);
    run->add_flag("--suspend", suspend, "Hold before main until the debugger resumes");

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
    if (suspend && !listen_port && connect_to.empty())
    {
        err << "minivm: --suspend requires --debug-listen or --debug-connect\n";
        return 1;
    }

    const auto source = read_file(file);
    if (!source)
    {
        err << "minivm: cannot read " << file << "\n";
        return 1;
    }

    minivm::Program program;
    try
    {
        program = minivm::parse_program(*source);
    }
    catch (const minivm::ProgramError &e)
    {
        err << file << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
        return 1;
    }
    const auto table = minivm::ClassTable::build(program);
    const auto diags = minivm::check_purity(program, table);
    if (!diags.empty())
    {
        for (const auto &d : diags)
            err << file << ": " << d.to_string() << "\n";
        return 1;
    }

    std::unique_ptr<minivm::Agent> agent;
    try
    {
        if (listen_port)
        {
            mdwp::Listener listener(static_cast<std::uint16_t>(*listen_port));
            if (*listen_port == 0)
                err << "minivm: listening on port " << listener.port() << std::endl;
            auto sock = listener.accept();
            mdwp::handshake_acceptor(*sock);
            agent = std::make_unique<minivm::Agent>(std::move(*sock), suspend);
        }
        else if (!connect_to.empty())
        {
            const auto [host, port] = mdwp::parse_host_port(connect_to);
            auto sock = dial(host, port);
            mdwp::handshake_connector(sock);
            agent = std::make_unique<minivm::Agent>(std::move(sock), suspend);
        }
    }
    catch (const std::invalid_argument &e)
    {
        err << "minivm: " << e.what() << "\n";
        return 1;
    }
    catch (const std::runtime_error &e)
    {
        err << "minivm: debugger connection failed: " << e.what() << "\n";
        return 1;
    }

    minivm::Interpreter vm(program, table, out);
    if (agent)
        vm.set_hooks(agent.get());
    return vm.run(err);
}

} // namespace cli
