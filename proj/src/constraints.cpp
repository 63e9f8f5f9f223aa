#include "cubind/constraints.hpp"

#include <algorithm>

namespace cubind {

bool constraint_satisfied(const Constraint& c) { return c.lhs == c.rhs; }

Constraint normalize(const Constraint& c) {
    if (c.lhs.is_const() && c.rhs.is_var()) return {c.rhs, c.lhs};
    return c;
}

bool ctx_valid(const ConstraintCtx& xi) {
    for (const auto& c : xi)
        if (constraint_satisfied(c)) return true;
    for (const auto& a : xi) {
        Constraint p = normalize(a);
        if (p.rhs != Dim::zero()) continue;
        for (const auto& b : xi) {
            Constraint q = normalize(b);
            if (q.rhs == Dim::one() && q.lhs == p.lhs) return true;
        }
    }
    return false;
}

std::optional<DimSubst> constraint_mgu(const Constraint& c) {
    if (c.lhs == c.rhs) return DimSubst{};
    if (c.lhs.is_const() && c.rhs.is_const()) return std::nullopt;
    if (c.lhs.is_var() && c.rhs.is_var()) {
        // The variable with the larger id was bound later and is the one replaced.
        const Name& early = c.lhs.var.id < c.rhs.var.id ? c.lhs.var : c.rhs.var;
        const Name& late = c.lhs.var.id < c.rhs.var.id ? c.rhs.var : c.lhs.var;
        return DimSubst::single(late, Dim::of(early));
    }
    Constraint n = normalize(c);
    return DimSubst::single(n.lhs.var, n.rhs);
}

std::optional<DimSubst> constraints_mgu(const ConstraintCtx& cs) {
    DimSubst acc;
    for (const auto& c : cs) {
        auto step = constraint_mgu(dim_subst(c, acc));
        if (!step) return std::nullopt;
        acc = DimSubst::then(acc, *step);
    }
    return acc;
}

int height(const ConstrList& k, std::string_view label) {
    int i = k.index_of(label);
    if (i < 0) throw UnknownLabel("unknown label " + std::string(label));
    return i;
}

int height(const ConstrList& k, const BTerm& m) {
    struct H {
        const ConstrList& k;
        int operator()(const bt::Var&) const { return -1; }
        int operator()(const bt::Intro& n) const {
            int h = height(k, n.label);
            for (const auto& a : n.args) h = std::max(h, height(k, a));
            return h;
        }
        int operator()(const bt::Fhcom& n) const {
            int h = height(k, n.cap);
            for (const auto& f : n.tube) h = std::max(h, height(k, f.body));
            return h;
        }
        int operator()(const bt::Fcoe& n) const { return height(k, n.body); }
        int operator()(const bt::Lam& n) const { return height(k, n.body); }
        int operator()(const bt::App& n) const { return height(k, n.fn); }
        int operator()(const bt::NatRec& n) const { return std::max(height(k, n.zero), height(k, n.suc)); }
    };
    return std::visit(H{k}, m->v);
}

}  // namespace cubind
