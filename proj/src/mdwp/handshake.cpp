#include "mdwp/handshake.hpp"

#include <array>
#include <string>

namespace mdwp
{

namespace
{

std::string read_magic(Socket &s)
{
    std::array<char, kMagic.size()> buf{};
    try
    {
        if (!s.read_exact(buf.data(), buf.size()))
            throw HandshakeError("peer closed the connection during handshake");
    }
    catch (const TransportError &e)
    {
        throw HandshakeError(std::string("handshake failed: ") + e.what());
    }
    return std::string(buf.data(), buf.size());
}

std::string printable(const std::string &s)
{
    std::string out;
    for (unsigned char c : s)
        out += (c >= 0x20 && c < 0x7f) ? static_cast<char>(c) : '?';
    return out;
}

} // namespace

void handshake_connector(Socket &s)
{
    s.write_all(kMagic.data(), kMagic.size());
    const auto reply = read_magic(s);
    if (reply != kMagic)
    {
        s.close();
        throw HandshakeError("protocol version mismatch: peer answered \"" + printable(reply) + "\"");
    }
}

void handshake_acceptor(Socket &s)
{
    const auto hello = read_magic(s);
    if (hello != kMagic)
    {
        try
        {
            s.write_all(kMagic.data(), kMagic.size());
        }
        catch (const TransportError &)
        {
        }
        s.close();
        throw HandshakeError("protocol version mismatch: peer sent \"" + printable(hello) + "\"");
    }
    s.write_all(hello.data(), hello.size());
}

} // namespace mdwp
