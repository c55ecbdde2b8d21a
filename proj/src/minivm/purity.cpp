#include "minivm/purity.hpp"

#include <algorithm>
#include <set>

namespace minivm
{

bool is_mutating_seq_method(const std::string &name)
{
    return name == "add" || name == "removeLast" || name == "set";
}

bool is_reading_seq_method(const std::string &name)
{
    return name == "size" || name == "last" || name == "get";
}

std::string PurityDiagnostic::to_string() const
{
    return cls + "." + method + " (line " + std::to_string(line) + "): " + message;
}

namespace
{

class Checker
{
  public:
    Checker(const Program &p, const ClassTable &t) : table_(t)
    {
        for (const auto &c : p.classes)
            for (const auto &m : c.methods)
                if (!m.pure)
                    impure_names_.insert(m.name);
    }

    void check_method(const ClassDef &c, const MethodDef &m)
    {
        cls_ = &c;
        method_ = &m;
        info_ = table_.find(c.name);
        block(m.body);
    }

    std::vector<PurityDiagnostic> diags;

  private:
    void report(int line, std::string msg) { diags.push_back({cls_->name, method_->name, line, std::move(msg)}); }

    bool is_field(const std::string &name) const
    {
        if (std::find(method_->params.begin(), method_->params.end(), name) != method_->params.end())
            return false;
        return info_ && info_->field_index(name) >= 0;
    }

    void block(const Block &b)
    {
        for (const auto &s : b)
            stmt(*s);
    }

    void stmt(const Stmt &s)
    {
        if (const auto *a = s.as<AssignStmt>())
        {
            if (a->target->as<FieldExpr>())
                report(s.line, "field assignment in pure method");
            else if (const auto *n = a->target->as<NameExpr>(); n && is_field(n->name))
                report(s.line, "field assignment in pure method");
            if (const auto *f = a->target->as<FieldExpr>())
                expr(*f->receiver);
            expr(*a->value);
        }
        else if (const auto *i = s.as<IfStmt>())
        {
            expr(*i->cond);
            block(i->then_block);
            block(i->else_block);
        }
        else if (const auto *w = s.as<WhileStmt>())
        {
            expr(*w->cond);
            block(w->body);
        }
        else if (const auto *r = s.as<ReturnStmt>())
        {
            if (r->value)
                expr(*r->value);
        }
        else if (const auto *e = s.as<ExprStmt>())
            expr(*e->expr);
    }

    void expr(const Expr &e)
    {
        if (const auto *c = e.as<CallExpr>())
        {
            if (c->receiver)
            {
                expr(*c->receiver);
                if (is_mutating_seq_method(c->method))
                    report(e.line, "mutating call in pure method");
                else if (impure_names_.count(c->method))
                    report(e.line, "pure calls non-pure");
            }
            else if (c->method == "print")
                report(e.line, "print in pure method");
            else if (c->method == "seq")
                report(e.line, "allocation in pure method");
            else if (c->method != "fail" && impure_names_.count(c->method))
                report(e.line, "pure calls non-pure");
            for (const auto &a : c->args)
                expr(*a);
        }
        else if (const auto *n = e.as<NewExpr>())
        {
            report(e.line, "allocation in pure method");
            for (const auto &a : n->args)
                expr(*a);
        }
        else if (const auto *f = e.as<FieldExpr>())
            expr(*f->receiver);
        else if (const auto *u = e.as<UnaryExpr>())
            expr(*u->operand);
        else if (const auto *b = e.as<BinaryExpr>())
        {
            expr(*b->lhs);
            expr(*b->rhs);
        }
    }

    const ClassTable &table_;
    std::set<std::string> impure_names_;
    const ClassDef *cls_ = nullptr;
    const MethodDef *method_ = nullptr;
    const ClassInfo *info_ = nullptr;
};

} // namespace

std::vector<PurityDiagnostic> check_purity(const Program &p, const ClassTable &table)
{
    Checker ch(p, table);
    for (const auto &c : p.classes)
        for (const auto &m : c.methods)
            if (m.pure)
                ch.check_method(c, m);
    return std::move(ch.diags);
}

std::vector<PurityDiagnostic> check_purity(const Program &p)
{
    return check_purity(p, ClassTable::build(p));
}

} // namespace minivm
