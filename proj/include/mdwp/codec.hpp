#pragma once

#include "mdwp/messages.hpp"

#include "json.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdwp
{

using Json = nlohmann::ordered_json;

/// Unrecoverable framing problem: bad length, truncated input, or a body that
/// is not a UTF-8 JSON object. The connection must be closed.
class FramingError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

Json value_to_json(const WireValue &v);
/// Throws std::invalid_argument when `j` is not a value encoding.
WireValue value_from_json(const Json &j);

/// Compact JSON text with "type" as the first key.
std::string encode_body(const Message &m);

/// Parses a body. Invalid UTF-8/JSON or a non-object throws FramingError;
/// an unknown type or a payload missing required fields yields Malformed.
Message decode_body(std::string_view body);

/// 4-byte big-endian length. Refuses 0 and anything that does not fit 32 bits.
std::array<std::uint8_t, 4> encode_header(std::size_t body_length);
std::uint32_t decode_header(std::span<const std::uint8_t> header);

std::vector<std::uint8_t> encode_frame(const Message &m);

/// Decodes exactly one complete frame; the buffer must hold header and body
/// and nothing else.
Message decode_frame(std::span<const std::uint8_t> bytes);

} // namespace mdwp
