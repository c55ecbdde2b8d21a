#pragma once

#include "mdwp/messages.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mdwp
{

/// Socket-level failure (connect refused, bind failure, peer reset ...).
class TransportError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class Socket
{
  public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket &&other) noexcept : fd_(other.release()) {}
    Socket &operator=(Socket &&other) noexcept;
    Socket(const Socket &) = delete;
    Socket &operator=(const Socket &) = delete;

    static Socket connect(const std::string &host, std::uint16_t port);

    bool valid() const noexcept { return fd_ >= 0; }
    int fd() const noexcept { return fd_; }
    int release() noexcept;
    void close() noexcept;

    void write_all(const void *data, std::size_t n);
    /// Fills exactly n bytes. Returns false on EOF before the first byte;
    /// throws TransportError on EOF midway or on error.
    bool read_exact(void *data, std::size_t n);
    /// True if at least one byte (or EOF) is ready within `timeout`.
    bool readable(std::chrono::milliseconds timeout) const;

    void send_message(const Message &m);
    /// Next frame, or nullopt on clean EOF at a frame boundary. Throws
    /// FramingError on malformed framing.
    std::optional<Message> receive_message();

  private:
    int fd_ = -1;
};

class Listener
{
  public:
    /// Binds 127.0.0.1:port (0 picks an ephemeral port).
    explicit Listener(std::uint16_t port, const std::string &host = "127.0.0.1");
    ~Listener();
    Listener(const Listener &) = delete;
    Listener &operator=(const Listener &) = delete;

    std::uint16_t port() const noexcept { return port_; }
    /// Blocks until a peer connects; nullopt on timeout.
    std::optional<Socket> accept(std::optional<std::chrono::milliseconds> timeout = std::nullopt);

  private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

/// An ephemeral port that was free a moment ago.
std::uint16_t pick_free_port();

/// "host:port" -> parts. Throws std::invalid_argument.
std::pair<std::string, std::uint16_t> parse_host_port(const std::string &text);

} // namespace mdwp
