#pragma once

#include "mdwp/socket.hpp"

#include <stdexcept>

namespace mdwp
{

class HandshakeError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// The dialing side writes the magic and expects it echoed.
void handshake_connector(Socket &s);

/// The accepting side reads the magic and echoes it. On a mismatch it sends
/// its own magic back so the peer can report the version, then throws.
void handshake_acceptor(Socket &s);

} // namespace mdwp
