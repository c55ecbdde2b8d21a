#pragma once

#include "mdwp/session.hpp"
#include "support/inproc.hpp"

#include <memory>
#include <string>

namespace testsupport
{

/// Launches the real minivm on a fixture (or any path) with its stdout sent
/// to `stdout_path`. The session starts suspended with VmStart queued.
inline std::unique_ptr<mdwp::Session> launch(const std::string &program, const std::string &stdout_path = "/dev/null")
{
    mdwp::LaunchTarget t;
    t.vm_path = MINIVM_PATH;
    t.program_path = program.find('/') == std::string::npos ? fixture(program) : program;
    t.spawn.stdout_path = stdout_path;
    return mdwp::Session::open(t);
}

/// Resumes until the first MethodEntry event for cls::method.
inline mdwp::MethodEntry run_to_entry(mdwp::Session &s, const std::string &cls, const std::string &method)
{
    while (auto es = s.next_event_set())
    {
        for (const auto &e : es->events)
            if (const auto *en = std::get_if<mdwp::MethodEntry>(&e); en && en->cls == cls && en->method == method)
                return *en;
        if (es->suspend)
            s.resume_all();
    }
    throw std::runtime_error("no entry event for " + cls + "::" + method);
}

} // namespace testsupport
