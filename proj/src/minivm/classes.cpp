#include "minivm/classes.hpp"

#include <functional>
#include <set>

namespace minivm
{

int ClassInfo::field_index(const std::string &field) const
{
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (layout[i].name == field)
            return static_cast<int>(i);
    return -1;
}

const ResolvedMethod *ClassInfo::find_method(const std::string &m) const
{
    for (const auto &rm : methods)
        if (rm.name == m)
            return &rm;
    return nullptr;
}

bool ClassInfo::is_a(const std::string &type) const
{
    if (name == type)
        return true;
    if (base && base->is_a(type))
        return true;
    for (const auto *i : interfaces)
        if (i->is_a(type))
            return true;
    return false;
}

ClassTable ClassTable::build(const Program &p)
{
    ClassTable t;
    for (const auto &c : p.classes)
    {
        auto info = std::make_unique<ClassInfo>();
        info->name = c.name;
        info->def = &c;
        t.order_.push_back(c.name);
        if (!t.infos_.emplace(c.name, std::move(info)).second)
            throw ProgramError(c.line, 1, "duplicate class " + c.name);
    }
    for (const auto &i : p.interfaces)
    {
        auto info = std::make_unique<ClassInfo>();
        info->name = i.name;
        info->is_interface = true;
        t.order_.push_back(i.name);
        if (!t.infos_.emplace(i.name, std::move(info)).second)
            throw ProgramError(i.line, 1, "duplicate class " + i.name);
    }

    // Link supertypes.
    for (const auto &c : p.classes)
    {
        auto &info = *t.infos_.at(c.name);
        if (c.base)
        {
            auto it = t.infos_.find(*c.base);
            if (it == t.infos_.end())
                throw ProgramError(c.line, 1, "unknown base class " + *c.base);
            if (it->second->is_interface)
                throw ProgramError(c.line, 1, *c.base + " is an interface, not a base class");
            info.base = it->second.get();
        }
        for (const auto &iname : c.interfaces)
        {
            auto it = t.infos_.find(iname);
            if (it == t.infos_.end())
                throw ProgramError(c.line, 1, "unknown interface " + iname);
            if (!it->second->is_interface)
                throw ProgramError(c.line, 1, iname + " is not an interface");
            info.interfaces.push_back(it->second.get());
        }
    }
    for (const auto &i : p.interfaces)
    {
        auto &info = *t.infos_.at(i.name);
        for (const auto &ename : i.extends)
        {
            auto it = t.infos_.find(ename);
            if (it == t.infos_.end())
                throw ProgramError(i.line, 1, "unknown interface " + ename);
            if (!it->second->is_interface)
                throw ProgramError(i.line, 1, ename + " is not an interface");
            info.interfaces.push_back(it->second.get());
        }
    }

    // Cycle check over all supertype edges.
    std::map<const ClassInfo *, int> state; // 1 visiting, 2 done
    std::function<void(const ClassInfo *)> visit = [&](const ClassInfo *c) {
        auto &s = state[c];
        if (s == 2)
            return;
        if (s == 1)
            throw ProgramError(c->def ? c->def->line : 1, 1, "inheritance cycle involving " + c->name);
        s = 1;
        if (c->base)
            visit(c->base);
        for (const auto *i : c->interfaces)
            visit(i);
        state[c] = 2;
    };
    for (const auto &[name, info] : t.infos_)
        visit(info.get());

    // Layouts and dispatch tables, supertypes first.
    std::set<const ClassInfo *> done;
    std::map<std::string, const InterfaceDef *> idefs;
    for (const auto &i : p.interfaces)
        idefs[i.name] = &i;
    std::function<void(ClassInfo *)> resolve = [&](ClassInfo *c) {
        if (done.count(c))
            return;
        if (c->is_interface)
        {
            for (const auto *sup : c->interfaces)
            {
                resolve(const_cast<ClassInfo *>(sup));
                for (const auto &m : sup->methods)
                    if (!c->find_method(m.name))
                        c->methods.push_back(m);
            }
            for (const auto &sig : idefs.at(c->name)->methods)
            {
                ResolvedMethod rm{sig.name, sig.params, sig.pure, Visibility::Public, nullptr, c};
                bool replaced = false;
                for (auto &m : c->methods)
                    if (m.name == sig.name)
                    {
                        m = rm;
                        replaced = true;
                    }
                if (!replaced)
                    c->methods.push_back(rm);
            }
            done.insert(c);
            return;
        }
        if (c->base)
        {
            resolve(const_cast<ClassInfo *>(c->base));
            c->layout = c->base->layout;
            c->methods = c->base->methods;
        }
        for (const auto &f : c->def->fields)
        {
            if (c->field_index(f.name) >= 0)
                throw ProgramError(f.line, 1, "field " + f.name + " of " + c->name + " hides an inherited field");
            c->layout.push_back({f.name, f.visibility, c});
        }
        for (const auto &m : c->def->methods)
        {
            ResolvedMethod rm{m.name, m.params, m.pure, m.visibility, &m, c};
            bool replaced = false;
            for (auto &existing : c->methods)
                if (existing.name == m.name)
                {
                    existing = rm;
                    replaced = true;
                }
            if (!replaced)
                c->methods.push_back(rm);
        }
        done.insert(c);
    };
    for (const auto &name : t.order_)
        resolve(t.infos_.at(name).get());

    // Interface conformance.
    for (const auto &c : p.classes)
    {
        const auto &info = *t.infos_.at(c.name);
        std::function<void(const ClassInfo *)> check = [&](const ClassInfo *iface) {
            for (const auto &sig : iface->methods)
            {
                const auto *impl = info.find_method(sig.name);
                if (!impl || impl->params.size() != sig.params.size())
                    throw ProgramError(c.line, 1, "class " + c.name + " does not implement " + iface->name + "." + sig.name);
                if (sig.pure && !impl->pure)
                    throw ProgramError(c.line, 1,
                                       c.name + "." + sig.name + " must be pure to implement " + iface->name + "." + sig.name);
            }
        };
        for (const ClassInfo *k = &info; k != nullptr; k = k->base)
            for (const auto *i : k->interfaces)
                check(i);
    }
    return t;
}

const ClassInfo *ClassTable::find(const std::string &name) const
{
    auto it = infos_.find(name);
    return it == infos_.end() ? nullptr : it->second.get();
}

} // namespace minivm
