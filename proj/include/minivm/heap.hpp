#pragma once

#include "minivm/classes.hpp"
#include "minivm/value.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace minivm
{

struct HeapObject
{
    const ClassInfo *cls = nullptr;
    std::vector<Value> fields; // in ClassInfo::layout order
};

struct HeapSeq
{
    std::vector<Value> items;
};

/// Objects and sequences share one id space starting at 1. Nothing is ever
/// collected, so ids stay valid for the whole run.
class Heap
{
  public:
    Ref new_object(const ClassInfo &cls);
    SeqHandle new_seq();

    HeapObject *object(std::int64_t id);
    HeapSeq *seq(std::int64_t id);
    const HeapObject *object(std::int64_t id) const;
    const HeapSeq *seq(std::int64_t id) const;
    std::size_t size() const { return entries_.size(); }

    /// FNV-1a 64 over a canonical serialization: entries in ascending id,
    /// fields in declaration order, every value tagged by variant.
    std::uint64_t digest() const;

  private:
    std::map<std::int64_t, std::variant<HeapObject, HeapSeq>> entries_;
    std::int64_t next_id_ = 1;
};

/// FNV-1a 64 over raw bytes; `seed` allows incremental hashing.
std::uint64_t fnv1a64(const void *data, std::size_t n, std::uint64_t seed = 14695981039346656037ull);

std::string hex64(std::uint64_t v);

} // namespace minivm
