#include "minivm/value.hpp"

#include <charconv>
#include <cmath>

namespace minivm
{

const char *type_name(const Value &v)
{
    static const char *names[] = {"Null", "Bool", "Int", "Real", "Str", "Ref", "Seq"};
    return names[v.index()];
}

std::string format_real(double d)
{
    if (std::isnan(d))
        return "nan";
    if (std::isinf(d))
        return d > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    std::string s(buf, end);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

bool values_equal(const Value &a, const Value &b)
{
    const auto *ai = std::get_if<std::int64_t>(&a);
    const auto *bi = std::get_if<std::int64_t>(&b);
    const auto *ar = std::get_if<double>(&a);
    const auto *br = std::get_if<double>(&b);
    if (ai && br)
        return static_cast<double>(*ai) == *br;
    if (ar && bi)
        return *ar == static_cast<double>(*bi);
    return a == b;
}

} // namespace minivm
