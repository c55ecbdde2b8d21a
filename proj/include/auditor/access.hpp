#pragma once

#include "mdwp/session.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace auditor
{

/// What the auditor needs from a target. Failures are reported as
/// mdwp::RemoteError; a lost target as mdwp::SessionDead.
class TargetAccess
{
  public:
    virtual ~TargetAccess() = default;
    virtual std::vector<std::string> list_classes() = 0;
    virtual const mdwp::ClassMirror &class_mirror(const std::string &name) = 0;
    virtual mdwp::WireValue get_field(const mdwp::ObjectRef &obj, const std::string &field) = 0;
    virtual mdwp::SeqSnapshot seq_snapshot(const mdwp::SeqRef &seq) = 0;
    virtual mdwp::WireValue invoke_pure(const mdwp::ObjectRef &obj, const mdwp::MethodMirror &m,
                                        const std::vector<mdwp::WireValue> &args) = 0;
    virtual std::uint64_t heap_digest() = 0;
};

class SessionAccess : public TargetAccess
{
  public:
    explicit SessionAccess(mdwp::Session &s) : s_(s) {}
    std::vector<std::string> list_classes() override { return s_.list_classes(); }
    const mdwp::ClassMirror &class_mirror(const std::string &name) override { return s_.class_mirror(name); }
    mdwp::WireValue get_field(const mdwp::ObjectRef &obj, const std::string &field) override
    {
        return s_.get_field(s_.mirror(obj), field);
    }
    mdwp::SeqSnapshot seq_snapshot(const mdwp::SeqRef &seq) override { return s_.seq_snapshot(seq); }
    mdwp::WireValue invoke_pure(const mdwp::ObjectRef &obj, const mdwp::MethodMirror &m,
                                const std::vector<mdwp::WireValue> &args) override
    {
        return s_.invoke_pure(s_.mirror(obj), m, args);
    }
    std::uint64_t heap_digest() override { return s_.heap_digest(); }

  private:
    mdwp::Session &s_;
};

} // namespace auditor
