#include "minivm/heap.hpp"

#include <cstring>

namespace minivm
{

std::uint64_t fnv1a64(const void *data, std::size_t n, std::uint64_t seed)
{
    const auto *p = static_cast<const unsigned char *>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i)
    {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    static const char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4)
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

Ref Heap::new_object(const ClassInfo &cls)
{
    const auto id = next_id_++;
    entries_.emplace(id, HeapObject{&cls, std::vector<Value>(cls.layout.size(), Null{})});
    return Ref{id};
}

SeqHandle Heap::new_seq()
{
    const auto id = next_id_++;
    entries_.emplace(id, HeapSeq{});
    return SeqHandle{id};
}

HeapObject *Heap::object(std::int64_t id)
{
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : std::get_if<HeapObject>(&it->second);
}

HeapSeq *Heap::seq(std::int64_t id)
{
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : std::get_if<HeapSeq>(&it->second);
}

const HeapObject *Heap::object(std::int64_t id) const
{
    return const_cast<Heap *>(this)->object(id);
}

const HeapSeq *Heap::seq(std::int64_t id) const
{
    return const_cast<Heap *>(this)->seq(id);
}

namespace
{

class Digest
{
  public:
    void byte(unsigned char b) { h_ = fnv1a64(&b, 1, h_); }
    void u64(std::uint64_t v)
    {
        for (int i = 7; i >= 0; --i)
            byte(static_cast<unsigned char>(v >> (i * 8)));
    }
    void str(const std::string &s)
    {
        u64(s.size());
        h_ = fnv1a64(s.data(), s.size(), h_);
    }
    void value(const Value &v)
    {
        byte(static_cast<unsigned char>('0' + v.index()));
        if (const auto *b = std::get_if<bool>(&v))
            byte(*b ? 1 : 0);
        else if (const auto *i = std::get_if<std::int64_t>(&v))
            u64(static_cast<std::uint64_t>(*i));
        else if (const auto *d = std::get_if<double>(&v))
        {
            std::uint64_t bits;
            std::memcpy(&bits, d, sizeof bits);
            u64(bits);
        }
        else if (const auto *s = std::get_if<std::string>(&v))
            str(*s);
        else if (const auto *r = std::get_if<Ref>(&v))
            u64(static_cast<std::uint64_t>(r->id));
        else if (const auto *q = std::get_if<SeqHandle>(&v))
            u64(static_cast<std::uint64_t>(q->id));
    }
    std::uint64_t result() const { return h_; }

  private:
    std::uint64_t h_ = 14695981039346656037ull;
};

} // namespace

std::uint64_t Heap::digest() const
{
    Digest d;
    for (const auto &[id, entry] : entries_)
    {
        if (const auto *o = std::get_if<HeapObject>(&entry))
        {
            d.byte('O');
            d.u64(static_cast<std::uint64_t>(id));
            d.str(o->cls->name);
            for (const auto &v : o->fields)
                d.value(v);
        }
        else
        {
            const auto &s = std::get<HeapSeq>(entry);
            d.byte('S');
            d.u64(static_cast<std::uint64_t>(id));
            d.u64(s.items.size());
            for (const auto &v : s.items)
                d.value(v);
        }
    }
    return d.result();
}

} // namespace minivm
