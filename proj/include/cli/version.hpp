#pragma once

#include <string>
#include <string_view>

namespace cli
{

inline constexpr std::string_view kToolVersion = "0.1.0";

/// "<tool> <version> (protocol MDWP-001)"
std::string version_line(std::string_view tool);

} // namespace cli
