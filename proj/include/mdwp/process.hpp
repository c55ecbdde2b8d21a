#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <sys/types.h>
#include <vector>

namespace mdwp
{

class SpawnError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct SpawnOptions
{
    // Where the child's stdout goes: inherit, another descriptor of ours, or a file.
    std::optional<int> stdout_fd;
    std::optional<std::string> stdout_path;
};

/// A child process that is reaped (and killed if still running) on destruction.
class ChildProcess
{
  public:
    ChildProcess() = default;
    ChildProcess(const std::string &path, const std::vector<std::string> &args, const SpawnOptions &opts = {});
    ~ChildProcess();
    ChildProcess(ChildProcess &&other) noexcept;
    ChildProcess &operator=(ChildProcess &&other) noexcept;
    ChildProcess(const ChildProcess &) = delete;
    ChildProcess &operator=(const ChildProcess &) = delete;

    pid_t pid() const noexcept { return pid_; }
    bool running();
    /// Exit status once the child has exited (128+signal when killed).
    std::optional<int> wait_for(std::chrono::milliseconds timeout);
    int wait();
    void kill();

  private:
    bool reap(int options);

    pid_t pid_ = -1;
    std::optional<int> status_;
};

} // namespace mdwp
