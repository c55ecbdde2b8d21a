#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace mdwp
{

struct NullValue
{
    bool operator==(const NullValue &) const = default;
};

struct ObjectRef
{
    std::int64_t id = 0;
    std::string cls;
    bool operator==(const ObjectRef &) const = default;
};

struct SeqRef
{
    std::int64_t id = 0;
    bool operator==(const SeqRef &) const = default;
};

// Values as they travel on the wire.
using WireValue = std::variant<NullValue, bool, std::int64_t, double, std::string, ObjectRef, SeqRef>;

// Shallow copy of a sequence's elements; refs stay refs.
struct SeqSnapshot
{
    std::vector<WireValue> elements;
    bool operator==(const SeqSnapshot &) const = default;
};

// Auditor-side value: a wire value or a materialized sequence.
using ValueMirror = std::variant<NullValue, bool, std::int64_t, double, std::string, ObjectRef, SeqRef, SeqSnapshot>;

inline WireValue int_value(std::int64_t v) { return WireValue{std::in_place_type<std::int64_t>, v}; }
inline WireValue real_value(double v) { return WireValue{std::in_place_type<double>, v}; }
inline WireValue bool_value(bool v) { return WireValue{std::in_place_type<bool>, v}; }
inline WireValue str_value(std::string v) { return WireValue{std::in_place_type<std::string>, std::move(v)}; }

ValueMirror to_mirror(const WireValue &v);

/// Short human-readable rendering used in report details and diagnostics.
std::string describe(const WireValue &v);
std::string describe(const ValueMirror &v);

/// Kind tag used by the wire encoding ("int", "real", ...).
const char *kind_name(const WireValue &v);
const char *kind_name(const ValueMirror &v);

} // namespace mdwp
