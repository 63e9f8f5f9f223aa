#pragma once

#include "cubind/syntax.hpp"

namespace cubind {

// Finite map from dimension variables to dimension terms.
class DimSubst {
public:
    DimSubst() = default;
    static DimSubst single(const Name& x, const Dim& r);

    void set(const Name& x, const Dim& r);
    const Dim* find(const Name& x) const;
    Dim apply(const Dim& r) const;
    bool empty() const { return map_.empty(); }
    const std::vector<std::pair<Name, Dim>>& entries() const { return map_; }

    // then(a, b) acts as a first and b afterwards.
    static DimSubst then(const DimSubst& first, const DimSubst& second);

private:
    std::vector<std::pair<Name, Dim>> map_;
};

// Simultaneous substitution for the three variable sorts.
class Subst {
public:
    void add_term(const Name& x, const Term& t);
    void add_dim(const Name& x, const Dim& r);
    void add_bvar(const Name& p, const BTerm& m);
    void add_dims(const DimSubst& psi);

    const Term* term(uint64_t id) const;
    const Dim* dim(uint64_t id) const;
    const BTerm* bvar(uint64_t id) const;
    void drop_term(uint64_t id);
    void drop_dim(uint64_t id);
    void drop_bvar(uint64_t id);

    bool touches(const FreeVars& f) const;
    bool empty() const { return tm_.empty() && dm_.empty() && bv_.empty(); }
    const FreeVars& range() const { return range_; }

private:
    std::vector<std::pair<uint64_t, Term>> tm_;
    std::vector<std::pair<uint64_t, Dim>> dm_;
    std::vector<std::pair<uint64_t, BTerm>> bv_;
    std::vector<uint64_t> dtm_, ddm_, dbv_;
    FreeVars range_;
};

Term substitute(const Term& t, const Subst& s);
BTerm substitute(const BTerm& m, const Subst& s);
ArgType substitute(const ArgType& a, const Subst& s);
Schema substitute(const Schema& k, const Subst& s);
Dim substitute(const Dim& r, const Subst& s);
Constraint substitute(const Constraint& c, const Subst& s);
std::vector<Term> substitute(const std::vector<Term>& ts, const Subst& s);
// Telescope binders scope over later entries only.
Telescope substitute(const Telescope& tel, const Subst& s);

Term dim_subst(const Term& t, const DimSubst& psi);
BTerm dim_subst(const BTerm& m, const DimSubst& psi);
Schema dim_subst(const Schema& k, const DimSubst& psi);
Telescope dim_subst(const Telescope& tel, const DimSubst& psi);
std::vector<Term> dim_subst(const std::vector<Term>& ts, const DimSubst& psi);
Constraint dim_subst(const Constraint& c, const DimSubst& psi);

Term term_subst(const Term& t, const std::vector<Term>& args, const std::vector<Name>& vars);
Term subst1(const Term& t, const Name& x, const Term& v);
Term dsubst1(const Term& t, const Name& x, const Dim& r);

bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const BTerm& a, const BTerm& b);
bool alpha_equal(const ArgType& a, const ArgType& b);
bool alpha_equal(const Schema& a, const Schema& b);
bool alpha_equal(const Telescope& a, const Telescope& b);

}  // namespace cubind
