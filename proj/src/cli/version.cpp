#include "cli/version.hpp"

#include "mdwp/messages.hpp"

namespace cli
{

std::string version_line(std::string_view tool)
{
    return std::string(tool) + " " + std::string(kToolVersion) + " (protocol " + std::string(mdwp::kMagic) + ")";
}

} // namespace cli
