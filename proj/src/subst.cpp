#include "cubind/subst.hpp"

#include <algorithm>
#include <optional>

namespace cubind {

DimSubst DimSubst::single(const Name& x, const Dim& r) {
    DimSubst s;
    s.set(x, r);
    return s;
}

void DimSubst::set(const Name& x, const Dim& r) {
    for (auto& e : map_)
        if (e.first == x) {
            e.second = r;
            return;
        }
    map_.emplace_back(x, r);
}

const Dim* DimSubst::find(const Name& x) const {
    for (const auto& e : map_)
        if (e.first == x) return &e.second;
    return nullptr;
}

Dim DimSubst::apply(const Dim& r) const {
    if (!r.is_var()) return r;
    const Dim* d = find(r.var);
    return d ? *d : r;
}

DimSubst DimSubst::then(const DimSubst& first, const DimSubst& second) {
    DimSubst out;
    for (const auto& e : first.map_) out.set(e.first, second.apply(e.second));
    for (const auto& e : second.map_)
        if (!first.find(e.first)) out.set(e.first, e.second);
    return out;
}

namespace {

template <class T>
const T* lookup(const std::vector<std::pair<uint64_t, T>>& m, uint64_t id) {
    auto it = std::lower_bound(m.begin(), m.end(), id,
                               [](const std::pair<uint64_t, T>& e, uint64_t k) { return e.first < k; });
    if (it != m.end() && it->first == id) return &it->second;
    return nullptr;
}

template <class T>
void upsert(std::vector<std::pair<uint64_t, T>>& m, std::vector<uint64_t>& keys, uint64_t id, T v) {
    auto it = std::lower_bound(m.begin(), m.end(), id,
                               [](const std::pair<uint64_t, T>& e, uint64_t k) { return e.first < k; });
    if (it != m.end() && it->first == id) {
        it->second = std::move(v);
        return;
    }
    m.insert(it, {id, std::move(v)});
    keys.insert(std::lower_bound(keys.begin(), keys.end(), id), id);
}

template <class T>
void remove(std::vector<std::pair<uint64_t, T>>& m, std::vector<uint64_t>& keys, uint64_t id) {
    auto it = std::lower_bound(m.begin(), m.end(), id,
                               [](const std::pair<uint64_t, T>& e, uint64_t k) { return e.first < k; });
    if (it != m.end() && it->first == id) m.erase(it);
    fv::erase(keys, id);
}

}  // namespace

void Subst::add_term(const Name& x, const Term& t) {
    upsert(tm_, dtm_, x.id, t);
    fv::add(range_, t->fv);
}
void Subst::add_dim(const Name& x, const Dim& r) {
    upsert(dm_, ddm_, x.id, r);
    fv::add_dim(range_, r);
}
void Subst::add_bvar(const Name& p, const BTerm& m) {
    upsert(bv_, dbv_, p.id, m);
    fv::add(range_, m->fv);
}
void Subst::add_dims(const DimSubst& psi) {
    for (const auto& e : psi.entries()) add_dim(e.first, e.second);
}
const Term* Subst::term(uint64_t id) const { return lookup(tm_, id); }
const Dim* Subst::dim(uint64_t id) const { return lookup(dm_, id); }
const BTerm* Subst::bvar(uint64_t id) const { return lookup(bv_, id); }
void Subst::drop_term(uint64_t id) { remove(tm_, dtm_, id); }
void Subst::drop_dim(uint64_t id) { remove(dm_, ddm_, id); }
void Subst::drop_bvar(uint64_t id) { remove(bv_, dbv_, id); }

bool Subst::touches(const FreeVars& f) const {
    return fv::intersects(f.tm, dtm_) || fv::intersects(f.dm, ddm_) || fv::intersects(f.bv, dbv_);
}

namespace {

// A substitution that is copied lazily the first time a binder forces a change.
class Scope {
public:
    explicit Scope(const Subst& base) : base_(base) {}
    const Subst& get() const { return own_ ? *own_ : base_; }

    Name tm(const Name& x) {
        const Subst& s = get();
        if (fv::contains(s.range().tm, x.id)) {
            Name y = fresh_name(x);
            mut().add_term(x, mk::var(y));
            return y;
        }
        if (s.term(x.id)) mut().drop_term(x.id);
        return x;
    }
    Name dm(const Name& x) {
        const Subst& s = get();
        if (fv::contains(s.range().dm, x.id)) {
            Name y = fresh_name(x);
            mut().add_dim(x, Dim::of(y));
            return y;
        }
        if (s.dim(x.id)) mut().drop_dim(x.id);
        return x;
    }
    Name bv(const Name& x) {
        const Subst& s = get();
        if (fv::contains(s.range().bv, x.id)) {
            Name y = fresh_name(x);
            mut().add_bvar(x, mk::bvar(y));
            return y;
        }
        if (s.bvar(x.id)) mut().drop_bvar(x.id);
        return x;
    }

private:
    Subst& mut() {
        if (!own_) own_ = base_;
        return *own_;
    }
    const Subst& base_;
    std::optional<Subst> own_;
};

Dim go_dim(const Dim& r, const Subst& s) {
    if (!r.is_var()) return r;
    const Dim* d = s.dim(r.var.id);
    return d ? *d : r;
}

Constraint go_con(const Constraint& c, const Subst& s) { return {go_dim(c.lhs, s), go_dim(c.rhs, s)}; }

Term go(const Term& t, const Subst& s);
BTerm go(const BTerm& m, const Subst& s);
ArgType go(const ArgType& a, const Subst& s);
Schema go(const Schema& k, const Subst& s);

std::vector<Term> go_terms(const std::vector<Term>& ts, const Subst& s) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(go(t, s));
    return out;
}

std::vector<Dim> go_dims(const std::vector<Dim>& rs, const Subst& s) {
    std::vector<Dim> out;
    out.reserve(rs.size());
    for (const auto& r : rs) out.push_back(go_dim(r, s));
    return out;
}

Tube go_tube(const Tube& tube, const Subst& s) {
    Tube out;
    out.reserve(tube.size());
    for (const auto& f : tube) {
        Scope sc(s);
        Name y = sc.dm(f.y);
        out.push_back(Face{go_con(f.xi, s), y, go(f.body, sc.get())});
    }
    return out;
}

// Substitutes a telescope, binding its names in `sc` as it goes.
Telescope go_tel(const Telescope& tel, Scope& sc) {
    Telescope out;
    out.reserve(tel.size());
    for (const auto& [x, a] : tel) {
        Term a2 = go(a, sc.get());
        Name x2 = sc.tm(x);
        out.emplace_back(x2, a2);
    }
    return out;
}

struct TermGo {
    const Subst& s;

    Term operator()(const tm::Var& n) const {
        const Term* t = s.term(n.x.id);
        return t ? *t : mk::var(n.x);
    }
    Term operator()(const tm::Lam& n) const {
        Scope sc(s);
        Name x = sc.tm(n.x);
        return mk::lam(x, go(n.body, sc.get()));
    }
    Term operator()(const tm::App& n) const { return mk::app(go(n.fn, s), go(n.arg, s)); }
    Term operator()(const tm::Pi& n) const {
        Term dom = go(n.dom, s);
        Scope sc(s);
        Name x = sc.tm(n.x);
        return mk::pi(x, dom, go(n.cod, sc.get()));
    }
    Term operator()(const tm::Ind& n) const {
        Scope sc(s);
        Telescope delta = go_tel(n.delta, sc);
        return mk::ind(std::move(delta), go(n.schema, s), go_terms(n.indices, s));
    }
    Term operator()(const tm::Intro& n) const {
        return mk::intro(go(n.schema, s), n.label, go_dims(n.dims, s), go_terms(n.params, s),
                         go_terms(n.args, s));
    }
    Term operator()(const tm::Fhcom& n) const {
        return mk::fhcom(go_dim(n.r, s), go_dim(n.s, s), go(n.cap, s), go_tube(n.tube, s));
    }
    Term operator()(const tm::Fcoe& n) const {
        Scope sc(s);
        Name z = sc.dm(n.z);
        return mk::fcoe(z, go_terms(n.line, sc.get()), go_dim(n.r, s), go_dim(n.s, s), go(n.body, s));
    }
    Term operator()(const tm::Fcom& n) const {
        Scope sc(s);
        Name z = sc.dm(n.z);
        return mk::fcom(z, go_terms(n.line, sc.get()), go_dim(n.r, s), go_dim(n.s, s), go(n.cap, s),
                        go_tube(n.tube, s));
    }
    Term operator()(const tm::Hcom& n) const {
        return mk::hcom(go(n.type, s), go_dim(n.r, s), go_dim(n.s, s), go(n.cap, s), go_tube(n.tube, s));
    }
    Term operator()(const tm::Coe& n) const {
        Scope sc(s);
        Name z = sc.dm(n.z);
        return mk::coe(z, go(n.type, sc.get()), go_dim(n.r, s), go_dim(n.s, s), go(n.body, s));
    }
    Term operator()(const tm::Com& n) const {
        Scope sc(s);
        Name z = sc.dm(n.z);
        return mk::com(z, go(n.type, sc.get()), go_dim(n.r, s), go_dim(n.s, s), go(n.cap, s),
                       go_tube(n.tube, s));
    }
    Term operator()(const tm::Tcoe& n) const {
        Scope sc(s);
        Name z = sc.dm(n.z);
        Scope inner(sc.get());
        Telescope delta = go_tel(n.delta, inner);
        return mk::tcoe(z, std::move(delta), go(n.schema, sc.get()), go_dim(n.r, s), go_dim(n.s, s),
                        go(n.body, s));
    }
    Term operator()(const tm::Elim& n) const {
        Scope sc(s);
        std::vector<Name> deltas;
        for (const auto& d : n.deltas) deltas.push_back(sc.tm(d));
        Name h = sc.tm(n.h);
        Term motive = go(n.motive, sc.get());
        ElimList cases;
        cases.reserve(n.cases.size());
        for (const auto& c : n.cases) {
            Scope cs(s);
            ElimCase out;
            out.label = c.label;
            for (const auto& x : c.dims) out.dims.push_back(cs.dm(x));
            for (const auto& x : c.params) out.params.push_back(cs.tm(x));
            for (const auto& x : c.recs) out.recs.push_back(cs.tm(x));
            for (const auto& x : c.results) out.results.push_back(cs.tm(x));
            out.body = go(c.body, cs.get());
            cases.push_back(std::move(out));
        }
        return mk::elim(std::move(deltas), h, motive, go_terms(n.indices, s), go(n.scrut, s),
                        std::move(cases));
    }
    Term operator()(const tm::PathTy& n) const {
        Scope sc(s);
        Name x = sc.dm(n.x);
        return mk::path(x, go(n.type, sc.get()), go(n.left, s), go(n.right, s));
    }
    Term operator()(const tm::PLam& n) const {
        Scope sc(s);
        Name x = sc.dm(n.x);
        return mk::plam(x, go(n.body, sc.get()));
    }
    Term operator()(const tm::PApp& n) const { return mk::papp(go(n.path, s), go_dim(n.r, s)); }
    Term operator()(const tm::NatRec& n) const {
        Scope sc(s);
        Name a = sc.tm(n.a);
        Name r = sc.tm(n.r);
        return mk::natrec(go(n.scrut, s), go(n.zero, s), a, r, go(n.suc, sc.get()));
    }
};

Term go(const Term& t, const Subst& s) {
    if (!s.touches(t->fv)) return t;
    return std::visit(TermGo{s}, t->v);
}

struct BGo {
    const Subst& s;

    BTerm operator()(const bt::Var& n) const {
        const BTerm* m = s.bvar(n.p.id);
        return m ? *m : mk::bvar(n.p);
    }
    BTerm operator()(const bt::Intro& n) const {
        std::vector<BTerm> args;
        for (const auto& a : n.args) args.push_back(go(a, s));
        return mk::bintro(n.label, go_dims(n.dims, s), go_terms(n.params, s), std::move(args));
    }
    BTerm operator()(const bt::Fhcom& n) const {
        std::vector<BFace> tube;
        for (const auto& f : n.tube) {
            Scope sc(s);
            Name y = sc.dm(f.y);
            tube.push_back(BFace{go_con(f.xi, s), y, go(f.body, sc.get())});
        }
        return mk::bfhcom(go_terms(n.indices, s), go_dim(n.r, s), go_dim(n.s, s), go(n.cap, s),
                          std::move(tube));
    }
    BTerm operator()(const bt::Fcoe& n) const {
        Scope sc(s);
        Name z = sc.dm(n.z);
        return mk::bfcoe(z, go_terms(n.indices, sc.get()), go_dim(n.r, s), go_dim(n.s, s), go(n.body, s));
    }
    BTerm operator()(const bt::Lam& n) const {
        Scope sc(s);
        Name a = sc.tm(n.a);
        return mk::blam(a, go(n.body, sc.get()));
    }
    BTerm operator()(const bt::App& n) const { return mk::bapp(go(n.fn, s), go(n.arg, s)); }
    BTerm operator()(const bt::NatRec& n) const {
        Scope sc(s);
        Name a = sc.tm(n.a);
        Name p = sc.bv(n.p);
        return mk::bnatrec(go(n.scrut, s), go(n.zero, s), a, p, go(n.suc, sc.get()));
    }
};

BTerm go(const BTerm& m, const Subst& s) {
    if (!s.touches(m->fv)) return m;
    return std::visit(BGo{s}, m->v);
}

ArgType go(const ArgType& a, const Subst& s) {
    if (!s.touches(a->fv)) return a;
    if (const auto* self = a->as<at::SelfAt>()) return mk::self_at(go_terms(self->indices, s));
    const auto& p = std::get<at::Pi>(a->v);
    Term dom = go(p.dom, s);
    Scope sc(s);
    Name b = sc.tm(p.b);
    return mk::arg_pi(b, dom, go(p.cod, sc.get()));
}

Constructor go_ctor(const Constructor& c, const Subst& s) {
    Constructor out;
    Scope sc(s);
    out.params = go_tel(c.params, sc);
    out.indices = go_terms(c.indices, sc.get());
    for (const auto& [p, a] : c.args) out.args.emplace_back(p, go(a, sc.get()));
    Scope inner(sc.get());
    for (auto& [p, a] : out.args) p = inner.bv(p);
    for (const auto& x : c.dims) out.dims.push_back(inner.dm(x));
    for (const auto& f : c.boundary)
        out.boundary.push_back(BoundaryFace{go_con(f.xi, inner.get()), go(f.body, inner.get())});
    return out;
}

Schema go(const Schema& k, const Subst& s) {
    if (!s.touches(k->fv)) return k;
    std::vector<ConstrEntry> entries;
    entries.reserve(k->entries.size());
    for (const auto& e : k->entries) entries.push_back(ConstrEntry{e.label, go_ctor(e.c, s)});
    return mk::schema(k->name, std::move(entries));
}

Subst from_dims(const DimSubst& psi) {
    Subst s;
    s.add_dims(psi);
    return s;
}

}  // namespace

Term substitute(const Term& t, const Subst& s) { return go(t, s); }
BTerm substitute(const BTerm& m, const Subst& s) { return go(m, s); }
ArgType substitute(const ArgType& a, const Subst& s) { return go(a, s); }
Schema substitute(const Schema& k, const Subst& s) { return go(k, s); }
Dim substitute(const Dim& r, const Subst& s) { return go_dim(r, s); }
Constraint substitute(const Constraint& c, const Subst& s) { return go_con(c, s); }
std::vector<Term> substitute(const std::vector<Term>& ts, const Subst& s) { return go_terms(ts, s); }
Telescope substitute(const Telescope& tel, const Subst& s) {
    Scope sc(s);
    return go_tel(tel, sc);
}

Term dim_subst(const Term& t, const DimSubst& psi) { return go(t, from_dims(psi)); }
BTerm dim_subst(const BTerm& m, const DimSubst& psi) { return go(m, from_dims(psi)); }
Schema dim_subst(const Schema& k, const DimSubst& psi) { return go(k, from_dims(psi)); }
Telescope dim_subst(const Telescope& tel, const DimSubst& psi) { return substitute(tel, from_dims(psi)); }
std::vector<Term> dim_subst(const std::vector<Term>& ts, const DimSubst& psi) {
    return go_terms(ts, from_dims(psi));
}
Constraint dim_subst(const Constraint& c, const DimSubst& psi) { return {psi.apply(c.lhs), psi.apply(c.rhs)}; }

Term term_subst(const Term& t, const std::vector<Term>& args, const std::vector<Name>& vars) {
    Subst s;
    for (size_t i = 0; i < vars.size() && i < args.size(); ++i) s.add_term(vars[i], args[i]);
    return go(t, s);
}

Term subst1(const Term& t, const Name& x, const Term& v) {
    Subst s;
    s.add_term(x, v);
    return go(t, s);
}

Term dsubst1(const Term& t, const Name& x, const Dim& r) {
    Subst s;
    s.add_dim(x, r);
    return go(t, s);
}

// ---------------------------------------------------------------------------
// alpha equivalence

namespace {

class Alpha {
public:
    bool term(const Term& a, const Term& b);
    bool bterm(const BTerm& a, const BTerm& b);
    bool arg(const ArgType& a, const ArgType& b);
    bool schema(const Schema& a, const Schema& b);
    bool tel(const Telescope& a, const Telescope& b, size_t& pushed);

private:
    using Env = std::vector<std::pair<uint64_t, uint64_t>>;
    Env tm_, dm_, bv_;

    static bool same(const Env& env, const Name& a, const Name& b) {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == a.id || it->second == b.id) return it->first == a.id && it->second == b.id;
        return a.id == b.id;
    }
    bool dim(const Dim& a, const Dim& b) {
        if (a.kind != b.kind) return false;
        return !a.is_var() || same(dm_, a.var, b.var);
    }
    bool con(const Constraint& a, const Constraint& b) { return dim(a.lhs, b.lhs) && dim(a.rhs, b.rhs); }
    bool dims(const std::vector<Dim>& a, const std::vector<Dim>& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!dim(a[i], b[i])) return false;
        return true;
    }
    bool terms(const std::vector<Term>& a, const std::vector<Term>& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!term(a[i], b[i])) return false;
        return true;
    }
    template <class F>
    bool under(Env& env, const Name& a, const Name& b, F&& f) {
        env.emplace_back(a.id, b.id);
        bool ok = f();
        env.pop_back();
        return ok;
    }
    bool tube(const Tube& a, const Tube& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i) {
            if (!con(a[i].xi, b[i].xi)) return false;
            if (!under(dm_, a[i].y, b[i].y, [&] { return term(a[i].body, b[i].body); })) return false;
        }
        return true;
    }
    bool cases(const ElimList& a, const ElimList& b);
    bool ctor(const Constructor& a, const Constructor& b);
    bool term_node(const TermNode& a, const TermNode& b);
};

bool Alpha::tel(const Telescope& a, const Telescope& b, size_t& pushed) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!term(a[i].second, b[i].second)) return false;
        tm_.emplace_back(a[i].first.id, b[i].first.id);
        ++pushed;
    }
    return true;
}

bool Alpha::cases(const ElimList& a, const ElimList& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.label != y.label || x.dims.size() != y.dims.size() || x.params.size() != y.params.size() ||
            x.recs.size() != y.recs.size() || x.results.size() != y.results.size())
            return false;
        size_t nd = x.dims.size(), nt = 0;
        for (size_t j = 0; j < nd; ++j) dm_.emplace_back(x.dims[j].id, y.dims[j].id);
        auto push = [&](const std::vector<Name>& p, const std::vector<Name>& q) {
            for (size_t j = 0; j < p.size(); ++j) {
                tm_.emplace_back(p[j].id, q[j].id);
                ++nt;
            }
        };
        push(x.params, y.params);
        push(x.recs, y.recs);
        push(x.results, y.results);
        bool ok = term(x.body, y.body);
        dm_.resize(dm_.size() - nd);
        tm_.resize(tm_.size() - nt);
        if (!ok) return false;
    }
    return true;
}

bool Alpha::ctor(const Constructor& a, const Constructor& b) {
    if (a.dims.size() != b.dims.size() || a.args.size() != b.args.size() ||
        a.boundary.size() != b.boundary.size() || a.indices.size() != b.indices.size())
        return false;
    size_t pushed = 0;
    bool ok = tel(a.params, b.params, pushed) && terms(a.indices, b.indices);
    for (size_t i = 0; ok && i < a.args.size(); ++i) ok = arg(a.args[i].second, b.args[i].second);
    size_t nb = 0, nd = 0;
    if (ok) {
        for (size_t i = 0; i < a.args.size(); ++i, ++nb) bv_.emplace_back(a.args[i].first.id, b.args[i].first.id);
        for (size_t i = 0; i < a.dims.size(); ++i, ++nd) dm_.emplace_back(a.dims[i].id, b.dims[i].id);
        for (size_t i = 0; ok && i < a.boundary.size(); ++i)
            ok = con(a.boundary[i].xi, b.boundary[i].xi) && bterm(a.boundary[i].body, b.boundary[i].body);
    }
    bv_.resize(bv_.size() - nb);
    dm_.resize(dm_.size() - nd);
    tm_.resize(tm_.size() - pushed);
    return ok;
}

bool Alpha::schema(const Schema& a, const Schema& b) {
    if (a == b && (a->fv.closed() || (tm_.empty() && dm_.empty() && bv_.empty()))) return true;
    if (a->entries.size() != b->entries.size()) return false;
    for (size_t i = 0; i < a->entries.size(); ++i) {
        if (a->entries[i].label != b->entries[i].label) return false;
        if (!ctor(a->entries[i].c, b->entries[i].c)) return false;
    }
    return true;
}

bool Alpha::arg(const ArgType& a, const ArgType& b) {
    if (const auto* x = a->as<at::SelfAt>()) {
        const auto* y = b->as<at::SelfAt>();
        return y && terms(x->indices, y->indices);
    }
    const auto& x = std::get<at::Pi>(a->v);
    const auto* y = b->as<at::Pi>();
    if (!y || !term(x.dom, y->dom)) return false;
    return under(tm_, x.b, y->b, [&] { return arg(x.cod, y->cod); });
}

bool Alpha::bterm(const BTerm& a, const BTerm& b) {
    if (a->v.index() != b->v.index()) return false;
    if (const auto* x = a->as<bt::Var>()) return same(bv_, x->p, b->as<bt::Var>()->p);
    if (const auto* x = a->as<bt::Intro>()) {
        const auto* y = b->as<bt::Intro>();
        if (x->label != y->label || !dims(x->dims, y->dims) || !terms(x->params, y->params) ||
            x->args.size() != y->args.size())
            return false;
        for (size_t i = 0; i < x->args.size(); ++i)
            if (!bterm(x->args[i], y->args[i])) return false;
        return true;
    }
    if (const auto* x = a->as<bt::Fhcom>()) {
        const auto* y = b->as<bt::Fhcom>();
        if (!terms(x->indices, y->indices) || !dim(x->r, y->r) || !dim(x->s, y->s) || !bterm(x->cap, y->cap) ||
            x->tube.size() != y->tube.size())
            return false;
        for (size_t i = 0; i < x->tube.size(); ++i) {
            if (!con(x->tube[i].xi, y->tube[i].xi)) return false;
            if (!under(dm_, x->tube[i].y, y->tube[i].y, [&] { return bterm(x->tube[i].body, y->tube[i].body); }))
                return false;
        }
        return true;
    }
    if (const auto* x = a->as<bt::Fcoe>()) {
        const auto* y = b->as<bt::Fcoe>();
        return under(dm_, x->z, y->z, [&] { return terms(x->indices, y->indices); }) && dim(x->r, y->r) &&
               dim(x->s, y->s) && bterm(x->body, y->body);
    }
    if (const auto* x = a->as<bt::Lam>()) {
        const auto* y = b->as<bt::Lam>();
        return under(tm_, x->a, y->a, [&] { return bterm(x->body, y->body); });
    }
    if (const auto* x = a->as<bt::App>()) {
        const auto* y = b->as<bt::App>();
        return bterm(x->fn, y->fn) && term(x->arg, y->arg);
    }
    const auto& x = std::get<bt::NatRec>(a->v);
    const auto* y = b->as<bt::NatRec>();
    if (!term(x.scrut, y->scrut) || !bterm(x.zero, y->zero)) return false;
    tm_.emplace_back(x.a.id, y->a.id);
    bv_.emplace_back(x.p.id, y->p.id);
    bool ok = bterm(x.suc, y->suc);
    tm_.pop_back();
    bv_.pop_back();
    return ok;
}

bool Alpha::term(const Term& a, const Term& b) {
    if (a == b && (a->fv.closed() || (tm_.empty() && dm_.empty() && bv_.empty()))) return true;
    if (a->v.index() != b->v.index()) return false;
    return term_node(*a, *b);
}

bool Alpha::term_node(const TermNode& a, const TermNode& b) {
    if (const auto* x = a.as<tm::Var>()) return same(tm_, x->x, b.as<tm::Var>()->x);
    if (const auto* x = a.as<tm::Lam>()) {
        const auto* y = b.as<tm::Lam>();
        return under(tm_, x->x, y->x, [&] { return term(x->body, y->body); });
    }
    if (const auto* x = a.as<tm::App>()) {
        const auto* y = b.as<tm::App>();
        return term(x->fn, y->fn) && term(x->arg, y->arg);
    }
    if (const auto* x = a.as<tm::Pi>()) {
        const auto* y = b.as<tm::Pi>();
        return term(x->dom, y->dom) && under(tm_, x->x, y->x, [&] { return term(x->cod, y->cod); });
    }
    if (const auto* x = a.as<tm::Ind>()) {
        const auto* y = b.as<tm::Ind>();
        size_t pushed = 0;
        bool ok = tel(x->delta, y->delta, pushed);
        tm_.resize(tm_.size() - pushed);
        return ok && schema(x->schema, y->schema) && terms(x->indices, y->indices);
    }
    if (const auto* x = a.as<tm::Intro>()) {
        const auto* y = b.as<tm::Intro>();
        return x->label == y->label && dims(x->dims, y->dims) && terms(x->params, y->params) &&
               terms(x->args, y->args) && schema(x->schema, y->schema);
    }
    if (const auto* x = a.as<tm::Fhcom>()) {
        const auto* y = b.as<tm::Fhcom>();
        return dim(x->r, y->r) && dim(x->s, y->s) && term(x->cap, y->cap) && tube(x->tube, y->tube);
    }
    if (const auto* x = a.as<tm::Fcoe>()) {
        const auto* y = b.as<tm::Fcoe>();
        return under(dm_, x->z, y->z, [&] { return terms(x->line, y->line); }) && dim(x->r, y->r) &&
               dim(x->s, y->s) && term(x->body, y->body);
    }
    if (const auto* x = a.as<tm::Fcom>()) {
        const auto* y = b.as<tm::Fcom>();
        return under(dm_, x->z, y->z, [&] { return terms(x->line, y->line); }) && dim(x->r, y->r) &&
               dim(x->s, y->s) && term(x->cap, y->cap) && tube(x->tube, y->tube);
    }
    if (const auto* x = a.as<tm::Hcom>()) {
        const auto* y = b.as<tm::Hcom>();
        return term(x->type, y->type) && dim(x->r, y->r) && dim(x->s, y->s) && term(x->cap, y->cap) &&
               tube(x->tube, y->tube);
    }
    if (const auto* x = a.as<tm::Coe>()) {
        const auto* y = b.as<tm::Coe>();
        return under(dm_, x->z, y->z, [&] { return term(x->type, y->type); }) && dim(x->r, y->r) &&
               dim(x->s, y->s) && term(x->body, y->body);
    }
    if (const auto* x = a.as<tm::Com>()) {
        const auto* y = b.as<tm::Com>();
        return under(dm_, x->z, y->z, [&] { return term(x->type, y->type); }) && dim(x->r, y->r) &&
               dim(x->s, y->s) && term(x->cap, y->cap) && tube(x->tube, y->tube);
    }
    if (const auto* x = a.as<tm::Tcoe>()) {
        const auto* y = b.as<tm::Tcoe>();
        bool ok = under(dm_, x->z, y->z, [&] {
            size_t pushed = 0;
            bool r = tel(x->delta, y->delta, pushed);
            tm_.resize(tm_.size() - pushed);
            return r && schema(x->schema, y->schema);
        });
        return ok && dim(x->r, y->r) && dim(x->s, y->s) && term(x->body, y->body);
    }
    if (const auto* x = a.as<tm::Elim>()) {
        const auto* y = b.as<tm::Elim>();
        if (x->deltas.size() != y->deltas.size()) return false;
        for (size_t i = 0; i < x->deltas.size(); ++i) tm_.emplace_back(x->deltas[i].id, y->deltas[i].id);
        tm_.emplace_back(x->h.id, y->h.id);
        bool ok = term(x->motive, y->motive);
        tm_.resize(tm_.size() - x->deltas.size() - 1);
        return ok && terms(x->indices, y->indices) && term(x->scrut, y->scrut) && cases(x->cases, y->cases);
    }
    if (const auto* x = a.as<tm::PathTy>()) {
        const auto* y = b.as<tm::PathTy>();
        return under(dm_, x->x, y->x, [&] { return term(x->type, y->type); }) && term(x->left, y->left) &&
               term(x->right, y->right);
    }
    if (const auto* x = a.as<tm::PLam>()) {
        const auto* y = b.as<tm::PLam>();
        return under(dm_, x->x, y->x, [&] { return term(x->body, y->body); });
    }
    if (const auto* x = a.as<tm::PApp>()) {
        const auto* y = b.as<tm::PApp>();
        return term(x->path, y->path) && dim(x->r, y->r);
    }
    const auto& x = std::get<tm::NatRec>(a.v);
    const auto* y = b.as<tm::NatRec>();
    if (!term(x.scrut, y->scrut) || !term(x.zero, y->zero)) return false;
    tm_.emplace_back(x.a.id, y->a.id);
    tm_.emplace_back(x.r.id, y->r.id);
    bool ok = term(x.suc, y->suc);
    tm_.resize(tm_.size() - 2);
    return ok;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) { return Alpha{}.term(a, b); }
bool alpha_equal(const BTerm& a, const BTerm& b) { return Alpha{}.bterm(a, b); }
bool alpha_equal(const ArgType& a, const ArgType& b) { return Alpha{}.arg(a, b); }
bool alpha_equal(const Schema& a, const Schema& b) { return Alpha{}.schema(a, b); }
bool alpha_equal(const Telescope& a, const Telescope& b) {
    size_t pushed = 0;
    return Alpha{}.tel(a, b, pushed);
}

}  // namespace cubind
