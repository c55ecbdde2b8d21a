#pragma once

// Random OCL expression trees for property tests.

#include "ocl/ast.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport
{

struct ExprGenOptions
{
    int max_depth = 4;
    bool allow_result = true;
    bool allow_at_pre = true;
    bool allow_binders = true;
    std::vector<std::string> idents{"a", "b", "v", "obj"};
};

class ExprGenerator
{
  public:
    explicit ExprGenerator(std::uint64_t seed, ExprGenOptions opts = {}) : rng_(seed), opts_(std::move(opts)) {}

    ocl::ExprPtr next() { return gen(opts_.max_depth, false); }

    std::mt19937_64 &rng() { return rng_; }

  private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    std::string name() { return opts_.idents[static_cast<std::size_t>(pick(static_cast<int>(opts_.idents.size())))]; }

    ocl::ExprPtr leaf(bool in_binder)
    {
        switch (pick(8))
        {
        case 0:
            return ocl::make_expr(ocl::IntLit{std::uniform_int_distribution<std::int64_t>(0, 1000)(rng_)});
        case 1:
            return ocl::make_expr(ocl::RealLit{static_cast<double>(pick(1000)) / 8.0});
        case 2: {
            static const char *strs[] = {"", "abc", "it's", "back\\slash", "tab\tnl\n"};
            return ocl::make_expr(ocl::StrLit{strs[pick(5)]});
        }
        case 3:
            return ocl::make_expr(ocl::BoolLit{pick(2) == 1});
        case 4:
            return ocl::make_expr(ocl::SelfRef{});
        case 5:
            if (opts_.allow_result)
                return ocl::make_expr(ocl::ResultRef{});
            [[fallthrough]];
        default:
            if (in_binder && pick(2) == 0)
                return ocl::make_expr(ocl::Ident{"it"});
            return ocl::make_expr(ocl::Ident{name()});
        }
    }

    // A navigation rooted at an Ident or implicit self, optionally marked @pre.
    ocl::ExprPtr navigation(int depth, bool in_binder)
    {
        ocl::ExprPtr nav;
        switch (pick(3))
        {
        case 0:
            nav = ocl::make_expr(ocl::Ident{name()});
            break;
        case 1: {
            std::vector<ocl::ExprPtr> args;
            const int n = pick(3);
            // Arguments may end up inside an @pre capture, where result is unavailable.
            const bool saved_result = opts_.allow_result;
            opts_.allow_result = false;
            for (int i = 0; i < n; ++i)
                args.push_back(gen(depth - 1, in_binder, false));
            opts_.allow_result = saved_result;
            nav = ocl::make_expr(ocl::Call{nullptr, name(), std::move(args)});
            break;
        }
        default:
            nav = ocl::make_expr(ocl::FieldAccess{ocl::make_expr(ocl::SelfRef{}), name()});
            break;
        }
        if (opts_.allow_at_pre && !in_binder && pick(3) == 0)
            nav = ocl::make_expr(ocl::AtPre{nav});
        // Extend the chain above the (possibly marked) navigation.
        while (pick(3) == 0)
        {
            if (pick(2) == 0)
                nav = ocl::make_expr(ocl::Call{nav, name(), {}});
            else
                nav = ocl::make_expr(ocl::FieldAccess{nav, name()});
        }
        return nav;
    }

    ocl::ExprPtr gen(int depth, bool in_binder, bool allow_at_pre_here = true)
    {
        if (depth <= 0)
            return leaf(in_binder);
        const bool saved = opts_.allow_at_pre;
        if (!allow_at_pre_here)
            opts_.allow_at_pre = false;
        ocl::ExprPtr out;
        switch (pick(7))
        {
        case 0:
            out = leaf(in_binder);
            break;
        case 1:
            out = navigation(depth, in_binder);
            break;
        case 2:
            out = ocl::make_expr(
                ocl::Unary{pick(2) ? ocl::UnaryOp::Not : ocl::UnaryOp::Negate, gen(depth - 1, in_binder)});
            break;
        case 3:
        case 4: {
            const auto op = static_cast<ocl::BinaryOp>(pick(14));
            out = ocl::make_expr(ocl::Binary{op, gen(depth - 1, in_binder), gen(depth - 1, in_binder)});
            break;
        }
        case 5: {
            ocl::CollectionOp c;
            c.receiver = navigation(depth - 1, in_binder);
            const bool saved_result = opts_.allow_result;
            opts_.allow_result = false;
            c.op = static_cast<ocl::CollectionOpKind>(pick(7));
            if (c.op == ocl::CollectionOpKind::ForAll || c.op == ocl::CollectionOpKind::Exists)
            {
                if (!opts_.allow_binders)
                    c.op = ocl::CollectionOpKind::Size;
                else
                {
                    c.binder = "it";
                    c.args.push_back(gen(depth - 1, true));
                }
            }
            else if (c.op == ocl::CollectionOpKind::Includes || c.op == ocl::CollectionOpKind::At)
                c.args.push_back(gen(depth - 1, in_binder));
            opts_.allow_result = saved_result;
            out = ocl::make_expr(std::move(c));
            break;
        }
        default:
            out = navigation(depth, in_binder);
            break;
        }
        opts_.allow_at_pre = saved;
        return out;
    }

    std::mt19937_64 rng_;
    ExprGenOptions opts_;
};

} // namespace testsupport
