#include "cubind/interpretation.hpp"

#include <functional>
#include <unordered_map>

namespace cubind {

namespace {

Term motive_at(const Motive& mot, const std::vector<Term>& indices, const Term& h) {
    if (indices.size() != mot.deltas.size()) throw InterpError("index arity mismatch");
    Subst s;
    for (size_t i = 0; i < indices.size(); ++i) s.add_term(mot.deltas[i], indices[i]);
    s.add_term(mot.h, h);
    return substitute(mot.body, s);
}

Term family_at(const Family& fam, const std::vector<Term>& indices) {
    if (indices.size() != fam.deltas.size()) throw InterpError("index arity mismatch");
    return term_subst(fam.body, indices, fam.deltas);
}

// Renames `b` away from anything in `avoid` before descending under it.
std::pair<Name, ArgType> open_pi(const at::Pi& p, const FreeVars& avoid) {
    if (!fv::contains(avoid.tm, p.b.id)) return {p.b, p.cod};
    Name b = fresh_name(p.b);
    Subst s;
    s.add_term(p.b, mk::var(b));
    return {b, substitute(p.cod, s)};
}

}  // namespace

Term tyatty(const ArgType& b, const Family& fam) {
    if (const auto* self = b->as<at::SelfAt>()) return family_at(fam, self->indices);
    const auto& p = std::get<at::Pi>(b->v);
    auto [x, cod] = open_pi(p, fam.body->fv);
    return mk::pi(x, p.dom, tyatty(cod, fam));
}

std::vector<Term> tyatty(const ArgCtx& theta, const Family& fam) {
    std::vector<Term> out;
    for (const auto& [p, b] : theta) out.push_back(tyatty(b, fam));
    return out;
}

Term tyatty_dep(const ArgType& b, const Motive& mot, const Term& n) {
    if (const auto* self = b->as<at::SelfAt>()) return motive_at(mot, self->indices, n);
    const auto& p = std::get<at::Pi>(b->v);
    FreeVars avoid = mot.body->fv;
    fv::add(avoid, n->fv);
    auto [x, cod] = open_pi(p, avoid);
    return mk::pi(x, p.dom, tyatty_dep(cod, mot, mk::app(n, mk::var(x))));
}

Term func_action(const ArgType& b, const Motive& map, const Term& m) {
    if (const auto* self = b->as<at::SelfAt>()) return motive_at(map, self->indices, m);
    const auto& p = std::get<at::Pi>(b->v);
    FreeVars avoid = map.body->fv;
    fv::add(avoid, m->fv);
    auto [x, cod] = open_pi(p, avoid);
    return mk::lam(x, func_action(cod, map, mk::app(m, mk::var(x))));
}

const ElimCase* find_case(const ElimList& cases, std::string_view label) {
    for (const auto& c : cases)
        if (c.label == label) return &c;
    return nullptr;
}

Term instantiate_case(const ElimCase& c, const std::vector<Dim>& dims, const std::vector<Term>& params,
                      const std::vector<Term>& recs, const std::vector<Term>& results) {
    if (dims.size() != c.dims.size() || params.size() != c.params.size() || recs.size() != c.recs.size() ||
        results.size() != c.results.size())
        throw InterpError("case arity mismatch for " + c.label);
    Subst s;
    for (size_t i = 0; i < dims.size(); ++i) s.add_dim(c.dims[i], dims[i]);
    for (size_t i = 0; i < params.size(); ++i) s.add_term(c.params[i], params[i]);
    for (size_t i = 0; i < recs.size(); ++i) s.add_term(c.recs[i], recs[i]);
    for (size_t i = 0; i < results.size(); ++i) s.add_term(c.results[i], results[i]);
    return substitute(c.body, s);
}

namespace {

// Shared walker for both boundary interpretations. Binders inside the
// boundary term are always freshened; `ren` carries those renamings into
// embedded terms and dimensions.
struct Interp {
    const Schema& k;
    const ElimList* cases = nullptr;
    const Motive* mot = nullptr;

    struct Env {
        Subst ren;
        std::unordered_map<uint64_t, Term> ns, ss;
    };

    Dim dim(const Dim& r, const Env& e) const { return substitute(r, e.ren); }
    Term term(const Term& t, const Env& e) const { return substitute(t, e.ren); }
    std::vector<Term> terms(const std::vector<Term>& ts, const Env& e) const { return substitute(ts, e.ren); }
    std::vector<Dim> dims(const std::vector<Dim>& rs, const Env& e) const {
        std::vector<Dim> out;
        for (const auto& r : rs) out.push_back(dim(r, e));
        return out;
    }

    Term plain(const BTerm& m, const Env& e) const {
        if (const auto* n = m->as<bt::Var>()) {
            auto it = e.ns.find(n->p.id);
            if (it == e.ns.end()) throw InterpError("unbound boundary variable " + std::string(n->p.text()));
            return it->second;
        }
        if (const auto* n = m->as<bt::Intro>()) {
            if (!k->find(n->label)) throw InterpError("unknown label " + n->label);
            std::vector<Term> args;
            for (const auto& a : n->args) args.push_back(plain(a, e));
            return mk::intro(k, n->label, dims(n->dims, e), terms(n->params, e), std::move(args));
        }
        if (const auto* n = m->as<bt::Fhcom>()) {
            Tube tube;
            for (const auto& f : n->tube) {
                Env inner = e;
                Name y = fresh_name(f.y);
                inner.ren.add_dim(f.y, Dim::of(y));
                tube.push_back(Face{substitute(f.xi, e.ren), y, plain(f.body, inner)});
            }
            return mk::fhcom(dim(n->r, e), dim(n->s, e), plain(n->cap, e), std::move(tube));
        }
        if (const auto* n = m->as<bt::Fcoe>()) {
            Env inner = e;
            Name z = fresh_name(n->z);
            inner.ren.add_dim(n->z, Dim::of(z));
            return mk::fcoe(z, terms(n->indices, inner), dim(n->r, e), dim(n->s, e), plain(n->body, e));
        }
        if (const auto* n = m->as<bt::Lam>()) {
            Env inner = e;
            Name a = fresh_name(n->a);
            inner.ren.add_term(n->a, mk::var(a));
            return mk::lam(a, plain(n->body, inner));
        }
        if (const auto* n = m->as<bt::App>()) return mk::app(plain(n->fn, e), term(n->arg, e));
        const auto& n = std::get<bt::NatRec>(m->v);
        Env inner = e;
        Name a = fresh_name(n.a);
        Name r = fresh_name(n.p);
        inner.ren.add_term(n.a, mk::var(a));
        inner.ns[n.p.id] = mk::var(r);
        return mk::natrec(term(n.scrut, e), plain(n.zero, e), a, r, plain(n.suc, inner));
    }

    Term dep(const BTerm& m, const Env& e) const {
        if (const auto* n = m->as<bt::Var>()) {
            auto it = e.ss.find(n->p.id);
            if (it == e.ss.end()) throw InterpError("unbound boundary variable " + std::string(n->p.text()));
            return it->second;
        }
        if (const auto* n = m->as<bt::Intro>()) {
            const ElimCase* c = find_case(*cases, n->label);
            if (!c) throw InterpError("no elimination case for " + n->label);
            std::vector<Term> recs, results;
            for (const auto& a : n->args) {
                recs.push_back(plain(a, e));
                results.push_back(dep(a, e));
            }
            return instantiate_case(*c, dims(n->dims, e), terms(n->params, e), recs, results);
        }
        if (const auto* n = m->as<bt::Fhcom>()) {
            // com{y. D[I/δ][F^y/h]} r r' dep(cap) [ξ_i -> y. dep(n_i)]
            Name y = fresh_name("y");
            BTerm filler = mk::bfhcom(n->indices, n->r, Dim::of(y), n->cap, n->tube);
            Term fy = plain(filler, e);
            Term line = motive_at(*mot, terms(n->indices, e), fy);
            Tube tube;
            for (const auto& f : n->tube) {
                Env inner = e;
                Name y2 = fresh_name(f.y);
                inner.ren.add_dim(f.y, Dim::of(y2));
                tube.push_back(Face{substitute(f.xi, e.ren), y2, dep(f.body, inner)});
            }
            return mk::com(y, line, dim(n->r, e), dim(n->s, e), dep(n->cap, e), std::move(tube));
        }
        if (const auto* n = m->as<bt::Fcoe>()) {
            // coe{z. D[I/δ][F^z/h]} r r' dep(m)
            Name z = fresh_name(n->z);
            BTerm filler = mk::bfcoe(n->z, n->indices, n->r, Dim::of(z), n->body);
            Term fz = plain(filler, e);
            Env inner = e;
            inner.ren.add_dim(n->z, Dim::of(z));
            Term line = motive_at(*mot, terms(n->indices, inner), fz);
            return mk::coe(z, line, dim(n->r, e), dim(n->s, e), dep(n->body, e));
        }
        if (const auto* n = m->as<bt::Lam>()) {
            Env inner = e;
            Name a = fresh_name(n->a);
            inner.ren.add_term(n->a, mk::var(a));
            return mk::lam(a, dep(n->body, inner));
        }
        if (const auto* n = m->as<bt::App>()) return mk::app(dep(n->fn, e), term(n->arg, e));
        const auto& n = std::get<bt::NatRec>(m->v);
        Name a = fresh_name(n.a);
        Name r = fresh_name(n.p);
        Env inner = e;
        inner.ren.add_term(n.a, mk::var(a));
        BTerm again = mk::bnatrec(mk::var(n.a), n.zero, n.a, n.p, n.suc);
        inner.ns[n.p.id] = plain(again, inner);
        inner.ss[n.p.id] = mk::var(r);
        return mk::natrec(term(n.scrut, e), dep(n.zero, e), a, r, dep(n.suc, inner));
    }
};

}  // namespace

Term insttm(const ArgCtx& theta, const BTerm& m, const Schema& k, const std::vector<Term>& ns) {
    if (ns.size() != theta.size()) throw InterpError("insttm arity mismatch");
    Interp in{k};
    Interp::Env e;
    for (size_t i = 0; i < ns.size(); ++i) e.ns[theta[i].first.id] = ns[i];
    return in.plain(m, e);
}

Term insttm_dep(const ArgCtx& theta, const BTerm& m, const Schema& k, const ElimList& cases,
                const Motive& mot, const std::vector<Term>& ns, const std::vector<Term>& ss) {
    if (ns.size() != theta.size() || ss.size() != theta.size()) throw InterpError("insttm_dep arity mismatch");
    Interp in{k, &cases, &mot};
    Interp::Env e;
    for (size_t i = 0; i < ns.size(); ++i) {
        e.ns[theta[i].first.id] = ns[i];
        e.ss[theta[i].first.id] = ss[i];
    }
    return in.dep(m, e);
}

std::vector<Term> mcoe(const Name& z, const Telescope& gamma, const Dim& r, const Dim& s,
                       const std::vector<Term>& ms) {
    if (ms.size() != gamma.size()) throw InterpError("mcoe length mismatch");
    // filler(j, d) = coe{w. A_j[w/z][filler(k, w)/γ_k]} r d M_j
    std::function<Term(size_t, const Dim&)> filler = [&](size_t j, const Dim& d) -> Term {
        Name w = fresh_name(z);
        Subst sb;
        sb.add_dim(z, Dim::of(w));
        for (size_t k = 0; k < j; ++k) sb.add_term(gamma[k].first, filler(k, Dim::of(w)));
        return mk::coe(w, substitute(gamma[j].second, sb), r, d, ms[j]);
    };
    std::vector<Term> out;
    for (size_t i = 0; i < gamma.size(); ++i) out.push_back(filler(i, s));
    return out;
}

}  // namespace cubind
