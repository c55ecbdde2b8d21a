#include "ocl/pre_chains.hpp"

namespace ocl
{

namespace
{

class ChainCollector
{
  public:
    PreChains result;

    void visit(const ExprPtr &e)
    {
        if (is_postfix(*e))
        {
            if (spine_has_at_pre(*e))
            {
                record(e);
                return;
            }
            // No marker on this spine: only arguments and bodies can hold chains.
            for (const Expr *cur = e.get(); cur != nullptr; cur = spine_child(*cur))
                visit_off_spine(*cur);
            return;
        }
        if (const auto *u = e->as<Unary>())
            visit(u->operand);
        else if (const auto *b = e->as<Binary>())
        {
            visit(b->lhs);
            visit(b->rhs);
        }
    }

  private:
    void visit_off_spine(const Expr &node)
    {
        if (const auto *c = node.as<Call>())
            for (const auto &a : c->args)
                visit(a);
        else if (const auto *c = node.as<CollectionOp>())
            for (const auto &a : c->args)
                visit(a);
    }

    void record(const ExprPtr &root)
    {
        for (const auto &existing : result.chains)
        {
            if (same_structure(*existing.root, *root))
            {
                result.chains.push_back({root, existing.slot});
                return;
            }
        }
        result.chains.push_back({root, result.slot_count++});
    }
};

} // namespace

PreChains extract_pre_chains(const ExprPtr &post)
{
    ChainCollector c;
    if (post)
        c.visit(post);
    return std::move(c.result);
}

} // namespace ocl
