#include "mdwp/values.hpp"

#include <charconv>
#include <cmath>

namespace mdwp
{

namespace
{

std::string real_text(double d)
{
    if (std::isnan(d))
        return "nan";
    if (std::isinf(d))
        return d > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    std::string s(buf, end);
    if (s.find_first_of(".en") == std::string::npos)
        s += ".0";
    return s;
}

template <typename... Fs> struct overloaded : Fs...
{
    using Fs::operator()...;
};
template <typename... Fs> overloaded(Fs...) -> overloaded<Fs...>;

} // namespace

ValueMirror to_mirror(const WireValue &v)
{
    return std::visit([](const auto &x) -> ValueMirror { return ValueMirror{x}; }, v);
}

std::string describe(const WireValue &v)
{
    return describe(to_mirror(v));
}

std::string describe(const ValueMirror &v)
{
    return std::visit(overloaded{
                          [](const NullValue &) -> std::string { return "null"; },
                          [](bool b) -> std::string { return b ? "true" : "false"; },
                          [](std::int64_t i) -> std::string { return std::to_string(i); },
                          [](double d) -> std::string { return real_text(d); },
                          [](const std::string &s) -> std::string { return "'" + s + "'"; },
                          [](const ObjectRef &r) -> std::string { return r.cls + "@" + std::to_string(r.id); },
                          [](const SeqRef &r) -> std::string { return "seq@" + std::to_string(r.id); },
                          [](const SeqSnapshot &s) -> std::string {
                              std::string out = "[";
                              for (std::size_t i = 0; i < s.elements.size(); ++i)
                              {
                                  if (i)
                                      out += ", ";
                                  out += describe(s.elements[i]);
                              }
                              return out + "]";
                          },
                      },
                      v);
}

const char *kind_name(const WireValue &v)
{
    return kind_name(to_mirror(v));
}

const char *kind_name(const ValueMirror &v)
{
    static const char *names[] = {"null", "bool", "int", "real", "str", "ref", "seq", "seq"};
    return names[v.index()];
}

} // namespace mdwp
