#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace minivm
{

struct Null
{
    bool operator==(const Null &) const = default;
};

struct Ref
{
    std::int64_t id = 0;
    bool operator==(const Ref &) const = default;
};

struct SeqHandle
{
    std::int64_t id = 0;
    bool operator==(const SeqHandle &) const = default;
};

using Value = std::variant<Null, bool, std::int64_t, double, std::string, Ref, SeqHandle>;

inline Value make_int(std::int64_t v) { return Value{std::in_place_type<std::int64_t>, v}; }
inline Value make_real(double v) { return Value{std::in_place_type<double>, v}; }
inline Value make_bool(bool v) { return Value{std::in_place_type<bool>, v}; }
inline Value make_str(std::string v) { return Value{std::in_place_type<std::string>, std::move(v)}; }

const char *type_name(const Value &v);

/// Shortest round-trip text; reals always show a '.' or exponent.
std::string format_real(double d);

/// MiniObj equality: Int and Real compare numerically, refs by id,
/// everything else by variant and value.
bool values_equal(const Value &a, const Value &b);

} // namespace minivm
