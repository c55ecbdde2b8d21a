#pragma once

// Random, valid MDWP messages for the codec round-trip property.

#include "mdwp/messages.hpp"

#include <limits>
#include <random>

namespace testsupport
{

class MessageGenerator
{
  public:
    explicit MessageGenerator(std::uint64_t seed) : rng_(seed) {}

    mdwp::Message next()
    {
        mdwp::Message m;
        m.body = body(pick(18));
        if (!std::holds_alternative<mdwp::EventSet>(m.body))
            m.id = integer(1, std::numeric_limits<std::int64_t>::max());
        return m;
    }

    mdwp::WireValue value()
    {
        switch (pick(7))
        {
        case 0:
            return mdwp::NullValue{};
        case 1:
            return mdwp::bool_value(pick(2) == 1);
        case 2: {
            static const std::int64_t edge[] = {0, -1, 1, std::numeric_limits<std::int64_t>::min(),
                                                std::numeric_limits<std::int64_t>::max()};
            return mdwp::int_value(pick(3) == 0 ? edge[pick(5)] : integer(-1000000, 1000000));
        }
        case 3: {
            static const double edge[] = {0.0, -0.0, 0.1, 1e308, -2.5e-308, std::numeric_limits<double>::infinity(),
                                          -std::numeric_limits<double>::infinity(), 5e-324};
            if (pick(3) == 0)
                return mdwp::real_value(edge[pick(8)]);
            return mdwp::real_value(std::uniform_real_distribution<double>(-1e6, 1e6)(rng_));
        }
        case 4:
            return mdwp::str_value(text());
        case 5:
            return mdwp::ObjectRef{integer(1, 1 << 20), name()};
        default:
            return mdwp::SeqRef{integer(1, 1 << 20)};
        }
    }

  private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }

    std::string text()
    {
        static const char *pieces[] = {"a", "Z", " ", "\"", "\\", "/", "\n", "\t", "\x01", "\x7f",
                                       "\xc3\xa9", "\xe2\x82\xac", "\xf0\x9f\x98\x80", "{", "}", "0"};
        std::string s;
        const int n = pick(12);
        for (int i = 0; i < n; ++i)
            s += pieces[pick(16)];
        return s;
    }

    std::string name()
    {
        static const char *names[] = {"BoundedStack", "Box", "A", "Main", "x", "K0", "Item"};
        return names[pick(7)];
    }

    std::vector<std::string> names()
    {
        std::vector<std::string> out(static_cast<std::size_t>(pick(4)));
        for (auto &n : out)
            n = name();
        return out;
    }

    std::vector<mdwp::WireValue> values()
    {
        std::vector<mdwp::WireValue> out;
        const int n = pick(5);
        for (int i = 0; i < n; ++i)
            out.push_back(value());
        return out;
    }

    std::optional<std::int64_t> maybe_int()
    {
        if (pick(2) == 0)
            return std::nullopt;
        return integer(1, 100000);
    }

    mdwp::CallSite site() { return {name(), name(), integer(0, 500)}; }

    mdwp::Event event()
    {
        switch (pick(4))
        {
        case 0:
            return mdwp::VmStart{};
        case 1:
            return mdwp::MethodEntry{integer(1, 1 << 30), name(), name(), maybe_int(), values(), site()};
        case 2:
            return mdwp::MethodExit{integer(1, 1 << 30), name(), name(), maybe_int(), values(), site(), value()};
        default: {
            std::optional<std::string> diag;
            if (pick(2) == 0)
                diag = text();
            return mdwp::VmDeath{pick(5), integer(0, 1 << 20), diag};
        }
        }
    }

    mdwp::Body body(int kind)
    {
        switch (kind)
        {
        case 0:
            return mdwp::ListClasses{};
        case 1:
            return mdwp::ClassInfo{name()};
        case 2:
            return mdwp::SetEventPolicy{names(), pick(2) == 1, pick(2) == 1};
        case 3:
            return mdwp::Resume{};
        case 4:
            return mdwp::Suspend{};
        case 5:
            return mdwp::ReadField{integer(1, 1 << 20), name()};
        case 6:
            return mdwp::ReadSeq{integer(1, 1 << 20)};
        case 7:
            return mdwp::InvokeMethod{integer(1, 1 << 20), name(), values()};
        case 8:
            return mdwp::HeapDigest{};
        case 9:
            return mdwp::Disconnect{};
        case 10:
            return mdwp::Ok{};
        case 11:
            return mdwp::Error{static_cast<mdwp::ErrorCode>(pick(10)), text()};
        case 12:
            return mdwp::ClassList{names()};
        case 13: {
            mdwp::ClassInfoReply r;
            r.name = name();
            r.kind = pick(2) ? "class" : "interface";
            if (pick(2))
                r.base = name();
            r.interfaces = names();
            for (int i = pick(3); i > 0; --i)
                r.fields.push_back({name(), pick(2) ? "public" : "private", name()});
            for (int i = pick(3); i > 0; --i)
                r.methods.push_back({name(), names(), pick(2) == 1, pick(2) ? "public" : "private", name()});
            return r;
        }
        case 14:
            return mdwp::ValueReply{value()};
        case 15:
            return mdwp::SeqReply{values()};
        case 16: {
            static const char *hex = "0123456789abcdef";
            std::string h;
            for (int i = 0; i < 16; ++i)
                h += hex[pick(16)];
            return mdwp::DigestReply{h};
        }
        default: {
            mdwp::EventSet es;
            es.suspend = pick(2) == 1;
            for (int i = 1 + pick(3); i > 0; --i)
                es.events.push_back(event());
            return es;
        }
        }
    }

    std::mt19937_64 rng_;
};

} // namespace testsupport
