#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

namespace cli
{

struct LaunchMode
{
    std::string program;
};
struct AttachMode
{
    std::string host;
    std::uint16_t port = 0;
};
struct ListenMode
{
    std::uint16_t port = 0;
};

struct AuditConfig
{
    std::string constraints;
    std::variant<LaunchMode, AttachMode, ListenMode> target;
    std::optional<std::string> out; // stdout when empty
    bool fail_fast = false;
    bool check_inv = true;
    bool check_pre = true;
    bool check_post = true;
    bool strict = false;
    bool verify_purity = false;
    std::string vm_path;
};

/// A config, or the exit code to stop with (0 after --help/--version).
std::variant<AuditConfig, int> parse_args(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Runs one audit. 0 clean, 2 FAIL, 3 ERROR only, 1 usage or infrastructure.
int run(const AuditConfig &config, std::ostream &out, std::ostream &err);

int auditor_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace cli
