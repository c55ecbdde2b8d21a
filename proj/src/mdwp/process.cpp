#include "mdwp/process.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char **environ;

namespace mdwp
{

ChildProcess::ChildProcess(const std::string &path, const std::vector<std::string> &args, const SpawnOptions &opts)
{
    if (::access(path.c_str(), X_OK) != 0)
        throw SpawnError("cannot execute " + path + ": " + std::strerror(errno));

    std::vector<std::string> storage;
    storage.push_back(path);
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : storage)
        argv.push_back(s.data());
    argv.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    if (opts.stdout_path)
        posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, opts.stdout_path->c_str(),
                                         O_WRONLY | O_CREAT | O_TRUNC, 0644);
    else if (opts.stdout_fd)
        posix_spawn_file_actions_adddup2(&actions, *opts.stdout_fd, STDOUT_FILENO);

    int rc = ::posix_spawn(&pid_, path.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0)
    {
        pid_ = -1;
        throw SpawnError("spawn " + path + ": " + std::strerror(rc));
    }
}

ChildProcess::~ChildProcess()
{
    if (pid_ > 0 && !status_)
    {
        if (!wait_for(std::chrono::milliseconds(2000)))
        {
            kill();
        }
    }
}

ChildProcess::ChildProcess(ChildProcess &&other) noexcept : pid_(other.pid_), status_(other.status_)
{
    other.pid_ = -1;
}

ChildProcess &ChildProcess::operator=(ChildProcess &&other) noexcept
{
    if (this != &other)
    {
        if (pid_ > 0 && !status_)
            kill();
        pid_ = other.pid_;
        status_ = other.status_;
        other.pid_ = -1;
    }
    return *this;
}

bool ChildProcess::reap(int options)
{
    if (pid_ <= 0 || status_)
        return true;
    int st = 0;
    pid_t r;
    do
        r = ::waitpid(pid_, &st, options);
    while (r < 0 && errno == EINTR);
    if (r == pid_)
    {
        if (WIFEXITED(st))
            status_ = WEXITSTATUS(st);
        else if (WIFSIGNALED(st))
            status_ = 128 + WTERMSIG(st);
        else
            status_ = -1;
        return true;
    }
    if (r < 0)
    {
        status_ = -1;
        return true;
    }
    return false;
}

bool ChildProcess::running()
{
    return !reap(WNOHANG);
}

std::optional<int> ChildProcess::wait_for(std::chrono::milliseconds timeout)
{
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (!reap(WNOHANG))
    {
        if (std::chrono::steady_clock::now() >= deadline)
            return std::nullopt;
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    return status_;
}

int ChildProcess::wait()
{
    reap(0);
    return status_.value_or(-1);
}

void ChildProcess::kill()
{
    if (pid_ > 0 && !status_)
    {
        ::kill(pid_, SIGKILL);
        reap(0);
    }
}

} // namespace mdwp
