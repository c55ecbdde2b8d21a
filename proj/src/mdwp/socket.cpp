#include "mdwp/socket.hpp"

#include "mdwp/codec.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace mdwp
{

namespace
{

std::string errno_text(const std::string &what)
{
    return what + ": " + std::strerror(errno);
}

void set_nodelay(int fd)
{
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

} // namespace

Socket::~Socket()
{
    close();
}

Socket &Socket::operator=(Socket &&other) noexcept
{
    if (this != &other)
    {
        close();
        fd_ = other.release();
    }
    return *this;
}

int Socket::release() noexcept
{
    int fd = fd_;
    fd_ = -1;
    return fd;
}

void Socket::close() noexcept
{
    if (fd_ >= 0)
    {
        ::close(fd_);
        fd_ = -1;
    }
}

Socket Socket::connect(const std::string &host, std::uint16_t port)
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo *res = nullptr;
    const auto port_text = std::to_string(port);
    if (int rc = ::getaddrinfo(host.c_str(), port_text.c_str(), &hints, &res); rc != 0)
        throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));

    std::string last_error = "no address for " + host;
    for (addrinfo *ai = res; ai != nullptr; ai = ai->ai_next)
    {
        int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
        if (fd < 0)
        {
            last_error = errno_text("socket");
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
        {
            ::freeaddrinfo(res);
            set_nodelay(fd);
            return Socket(fd);
        }
        last_error = errno_text("connect to " + host + ":" + port_text);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    throw TransportError(last_error);
}

void Socket::write_all(const void *data, std::size_t n)
{
    const auto *p = static_cast<const char *>(data);
    while (n > 0)
    {
        ssize_t w = ::send(fd_, p, n, MSG_NOSIGNAL);
        if (w < 0)
        {
            if (errno == EINTR)
                continue;
            throw TransportError(errno_text("send"));
        }
        p += w;
        n -= static_cast<std::size_t>(w);
    }
}

bool Socket::read_exact(void *data, std::size_t n)
{
    auto *p = static_cast<char *>(data);
    std::size_t got = 0;
    while (got < n)
    {
        ssize_t r = ::recv(fd_, p + got, n - got, 0);
        if (r < 0)
        {
            if (errno == EINTR)
                continue;
            throw TransportError(errno_text("recv"));
        }
        if (r == 0)
        {
            if (got == 0)
                return false;
            throw TransportError("connection closed mid-read");
        }
        got += static_cast<std::size_t>(r);
    }
    return true;
}

bool Socket::readable(std::chrono::milliseconds timeout) const
{
    pollfd pfd{fd_, POLLIN, 0};
    int rc;
    do
        rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    while (rc < 0 && errno == EINTR);
    if (rc < 0)
        throw TransportError(errno_text("poll"));
    return rc > 0;
}

void Socket::send_message(const Message &m)
{
    const auto frame = encode_frame(m);
    write_all(frame.data(), frame.size());
}

std::optional<Message> Socket::receive_message()
{
    std::array<std::uint8_t, 4> header{};
    bool first;
    try
    {
        first = read_exact(header.data(), 1);
        if (first)
            read_exact(header.data() + 1, 3);
    }
    catch (const TransportError &e)
    {
        throw FramingError(std::string("truncated frame header: ") + e.what());
    }
    if (!first)
        return std::nullopt;
    const auto n = decode_header(header);
    std::string body(n, '\0');
    try
    {
        if (!read_exact(body.data(), n))
            throw FramingError("frame body missing");
    }
    catch (const TransportError &e)
    {
        throw FramingError(std::string("truncated frame body: ") + e.what());
    }
    return decode_body(body);
}

Listener::Listener(std::uint16_t port, const std::string &host)
{
    fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd_ < 0)
        throw TransportError(errno_text("socket"));
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
    {
        ::close(fd_);
        throw TransportError("bad listen address " + host);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof addr) != 0 || ::listen(fd_, 4) != 0)
    {
        auto msg = errno_text("bind " + host + ":" + std::to_string(port));
        ::close(fd_);
        throw TransportError(msg);
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

Listener::~Listener()
{
    if (fd_ >= 0)
        ::close(fd_);
}

std::optional<Socket> Listener::accept(std::optional<std::chrono::milliseconds> timeout)
{
    if (timeout)
    {
        pollfd pfd{fd_, POLLIN, 0};
        int rc;
        do
            rc = ::poll(&pfd, 1, static_cast<int>(timeout->count()));
        while (rc < 0 && errno == EINTR);
        if (rc < 0)
            throw TransportError(errno_text("poll"));
        if (rc == 0)
            return std::nullopt;
    }
    int fd;
    do
        fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
    while (fd < 0 && errno == EINTR);
    if (fd < 0)
        throw TransportError(errno_text("accept"));
    set_nodelay(fd);
    return Socket(fd);
}

std::uint16_t pick_free_port()
{
    Listener l(0);
    return l.port();
}

std::pair<std::string, std::uint16_t> parse_host_port(const std::string &text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw std::invalid_argument("expected host:port, got '" + text + "'");
    unsigned port = 0;
    const char *b = text.data() + colon + 1;
    const char *e = text.data() + text.size();
    auto [p, ec] = std::from_chars(b, e, port);
    if (ec != std::errc{} || p != e || port == 0 || port > 65535)
        throw std::invalid_argument("bad port in '" + text + "'");
    return {text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

} // namespace mdwp
