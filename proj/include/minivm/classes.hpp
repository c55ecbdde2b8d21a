#pragma once

#include "minivm/ast.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace minivm
{

struct ClassInfo;

struct FieldSlot
{
    std::string name;
    Visibility visibility;
    const ClassInfo *declaring;
};

struct ResolvedMethod
{
    std::string name;
    std::vector<std::string> params;
    bool pure = false;
    Visibility visibility = Visibility::Public;
    const MethodDef *def = nullptr; // null for interface signatures
    const ClassInfo *declaring = nullptr;
};

struct ClassInfo
{
    std::string name;
    bool is_interface = false;
    const ClassDef *def = nullptr;
    const ClassInfo *base = nullptr;
    std::vector<const ClassInfo *> interfaces; // direct supertypes other than base
    std::vector<FieldSlot> layout;             // inherited slots first
    std::vector<ResolvedMethod> methods;       // inherited first; overrides keep their slot

    int field_index(const std::string &field) const;
    const ResolvedMethod *find_method(const std::string &m) const;
    bool is_a(const std::string &type) const;
};

/// Resolved class graph of a program: layouts, dispatch tables, interfaces.
class ClassTable
{
  public:
    /// Throws ProgramError on unknown or cyclic supertypes, duplicate names,
    /// or a class missing an interface method.
    static ClassTable build(const Program &p);

    const ClassInfo *find(const std::string &name) const;
    /// Classes then interfaces, each in declaration order.
    const std::vector<std::string> &names() const { return order_; }

  private:
    std::map<std::string, std::unique_ptr<ClassInfo>> infos_;
    std::vector<std::string> order_;
};

} // namespace minivm
