#include "cubind/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <unordered_set>

namespace cubind {

namespace {
std::atomic<uint64_t> next_id{1};

const std::string* intern(std::string_view s) {
    static std::mutex mu;
    static std::unordered_set<std::string> pool;
    std::lock_guard<std::mutex> lock(mu);
    return &*pool.emplace(s).first;
}
}  // namespace

std::string_view Name::text() const {
    return hint ? std::string_view(*hint) : std::string_view("_");
}

Name fresh_name(std::string_view hint) {
    return Name{next_id.fetch_add(1, std::memory_order_relaxed), intern(hint)};
}

Name fresh_name(const Name& like) {
    return Name{next_id.fetch_add(1, std::memory_order_relaxed), like.hint ? like.hint : intern("_")};
}

Name fresh_dim() { return fresh_name("x"); }

const Constructor* ConstrList::find(std::string_view label) const {
    for (const auto& e : entries)
        if (e.label == label) return &e.c;
    return nullptr;
}

int ConstrList::index_of(std::string_view label) const {
    for (size_t i = 0; i < entries.size(); ++i)
        if (entries[i].label == label) return static_cast<int>(i);
    return -1;
}

namespace fv {

void unite(std::vector<uint64_t>& into, const std::vector<uint64_t>& from) {
    if (from.empty()) return;
    if (into.empty()) {
        into = from;
        return;
    }
    std::vector<uint64_t> out;
    out.reserve(into.size() + from.size());
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into.swap(out);
}

void erase(std::vector<uint64_t>& v, uint64_t id) {
    auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it != v.end() && *it == id) v.erase(it);
}

bool contains(const std::vector<uint64_t>& v, uint64_t id) {
    return std::binary_search(v.begin(), v.end(), id);
}

bool intersects(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

void add(FreeVars& into, const FreeVars& from) {
    unite(into.tm, from.tm);
    unite(into.dm, from.dm);
    unite(into.bv, from.bv);
}

static void insert(std::vector<uint64_t>& v, uint64_t id) {
    auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it == v.end() || *it != id) v.insert(it, id);
}

void add_dim(FreeVars& into, const Dim& r) {
    if (r.is_var()) insert(into.dm, r.var.id);
}

void add_constraint(FreeVars& into, const Constraint& c) {
    add_dim(into, c.lhs);
    add_dim(into, c.rhs);
}

FreeVars of_telescope(const Telescope& tel) {
    FreeVars acc;
    for (auto it = tel.rbegin(); it != tel.rend(); ++it) {
        erase(acc.tm, it->first.id);
        add(acc, it->second->fv);
    }
    return acc;
}

FreeVars of_constructor(const Constructor& c) {
    FreeVars acc;
    for (const auto& f : c.boundary) {
        add_constraint(acc, f.xi);
        add(acc, f.body->fv);
    }
    for (const auto& x : c.dims) erase(acc.dm, x.id);
    for (const auto& a : c.args) erase(acc.bv, a.first.id);
    for (const auto& a : c.args) add(acc, a.second->fv);
    for (const auto& i : c.indices) add(acc, i->fv);
    for (auto it = c.params.rbegin(); it != c.params.rend(); ++it) {
        erase(acc.tm, it->first.id);
        add(acc, it->second->fv);
    }
    return acc;
}

FreeVars of_cases(const ElimList& cases) {
    FreeVars acc;
    for (const auto& c : cases) {
        FreeVars b = c.body->fv;
        for (const auto& x : c.dims) erase(b.dm, x.id);
        for (const auto* group : {&c.params, &c.recs, &c.results})
            for (const auto& n : *group) erase(b.tm, n.id);
        add(acc, b);
    }
    return acc;
}

}  // namespace fv

namespace {

void add_tube(FreeVars& acc, const Tube& tube) {
    for (const auto& f : tube) {
        fv::add_constraint(acc, f.xi);
        FreeVars b = f.body->fv;
        fv::erase(b.dm, f.y.id);
        fv::add(acc, b);
    }
}

void add_terms(FreeVars& acc, const std::vector<Term>& ts) {
    for (const auto& t : ts) fv::add(acc, t->fv);
}

struct TermFv {
    FreeVars operator()(const tm::Var& n) const {
        FreeVars f;
        f.tm.push_back(n.x.id);
        return f;
    }
    FreeVars operator()(const tm::Lam& n) const {
        FreeVars f = n.body->fv;
        fv::erase(f.tm, n.x.id);
        return f;
    }
    FreeVars operator()(const tm::App& n) const {
        FreeVars f = n.fn->fv;
        fv::add(f, n.arg->fv);
        return f;
    }
    FreeVars operator()(const tm::Pi& n) const {
        FreeVars f = n.cod->fv;
        fv::erase(f.tm, n.x.id);
        fv::add(f, n.dom->fv);
        return f;
    }
    FreeVars operator()(const tm::Ind& n) const {
        FreeVars f = fv::of_telescope(n.delta);
        fv::add(f, n.schema->fv);
        add_terms(f, n.indices);
        return f;
    }
    FreeVars operator()(const tm::Intro& n) const {
        FreeVars f = n.schema->fv;
        for (const auto& r : n.dims) fv::add_dim(f, r);
        add_terms(f, n.params);
        add_terms(f, n.args);
        return f;
    }
    FreeVars operator()(const tm::Fhcom& n) const {
        FreeVars f = n.cap->fv;
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        add_tube(f, n.tube);
        return f;
    }
    FreeVars operator()(const tm::Fcoe& n) const {
        FreeVars f;
        add_terms(f, n.line);
        fv::erase(f.dm, n.z.id);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.body->fv);
        return f;
    }
    FreeVars operator()(const tm::Fcom& n) const {
        FreeVars f;
        add_terms(f, n.line);
        fv::erase(f.dm, n.z.id);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.cap->fv);
        add_tube(f, n.tube);
        return f;
    }
    FreeVars operator()(const tm::Hcom& n) const {
        FreeVars f = n.type->fv;
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.cap->fv);
        add_tube(f, n.tube);
        return f;
    }
    FreeVars operator()(const tm::Coe& n) const {
        FreeVars f = n.type->fv;
        fv::erase(f.dm, n.z.id);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.body->fv);
        return f;
    }
    FreeVars operator()(const tm::Com& n) const {
        FreeVars f = n.type->fv;
        fv::erase(f.dm, n.z.id);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.cap->fv);
        add_tube(f, n.tube);
        return f;
    }
    FreeVars operator()(const tm::Tcoe& n) const {
        FreeVars f = fv::of_telescope(n.delta);
        fv::add(f, n.schema->fv);
        fv::erase(f.dm, n.z.id);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.body->fv);
        return f;
    }
    FreeVars operator()(const tm::Elim& n) const {
        FreeVars f = n.motive->fv;
        for (const auto& d : n.deltas) fv::erase(f.tm, d.id);
        fv::erase(f.tm, n.h.id);
        add_terms(f, n.indices);
        fv::add(f, n.scrut->fv);
        fv::add(f, fv::of_cases(n.cases));
        return f;
    }
    FreeVars operator()(const tm::PathTy& n) const {
        FreeVars f = n.type->fv;
        fv::erase(f.dm, n.x.id);
        fv::add(f, n.left->fv);
        fv::add(f, n.right->fv);
        return f;
    }
    FreeVars operator()(const tm::PLam& n) const {
        FreeVars f = n.body->fv;
        fv::erase(f.dm, n.x.id);
        return f;
    }
    FreeVars operator()(const tm::PApp& n) const {
        FreeVars f = n.path->fv;
        fv::add_dim(f, n.r);
        return f;
    }
    FreeVars operator()(const tm::NatRec& n) const {
        FreeVars f = n.suc->fv;
        fv::erase(f.tm, n.a.id);
        fv::erase(f.tm, n.r.id);
        fv::add(f, n.scrut->fv);
        fv::add(f, n.zero->fv);
        return f;
    }
};

struct BFv {
    FreeVars operator()(const bt::Var& n) const {
        FreeVars f;
        f.bv.push_back(n.p.id);
        return f;
    }
    FreeVars operator()(const bt::Intro& n) const {
        FreeVars f;
        for (const auto& r : n.dims) fv::add_dim(f, r);
        add_terms(f, n.params);
        for (const auto& a : n.args) fv::add(f, a->fv);
        return f;
    }
    FreeVars operator()(const bt::Fhcom& n) const {
        FreeVars f = n.cap->fv;
        add_terms(f, n.indices);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        for (const auto& face : n.tube) {
            fv::add_constraint(f, face.xi);
            FreeVars b = face.body->fv;
            fv::erase(b.dm, face.y.id);
            fv::add(f, b);
        }
        return f;
    }
    FreeVars operator()(const bt::Fcoe& n) const {
        FreeVars f;
        add_terms(f, n.indices);
        fv::erase(f.dm, n.z.id);
        fv::add_dim(f, n.r);
        fv::add_dim(f, n.s);
        fv::add(f, n.body->fv);
        return f;
    }
    FreeVars operator()(const bt::Lam& n) const {
        FreeVars f = n.body->fv;
        fv::erase(f.tm, n.a.id);
        return f;
    }
    FreeVars operator()(const bt::App& n) const {
        FreeVars f = n.fn->fv;
        fv::add(f, n.arg->fv);
        return f;
    }
    FreeVars operator()(const bt::NatRec& n) const {
        FreeVars f = n.suc->fv;
        fv::erase(f.tm, n.a.id);
        fv::erase(f.bv, n.p.id);
        fv::add(f, n.scrut->fv);
        fv::add(f, n.zero->fv);
        return f;
    }
};

}  // namespace

namespace mk {

Term node(TermNode::V v) {
    auto n = std::make_shared<TermNode>();
    n->v = std::move(v);
    n->fv = std::visit(TermFv{}, n->v);
    return n;
}

Term var(const Name& x) { return node(tm::Var{x}); }
Term lam(const Name& x, Term body) { return node(tm::Lam{x, std::move(body)}); }
Term app(Term fn, Term arg) { return node(tm::App{std::move(fn), std::move(arg)}); }
Term apps(Term fn, const std::vector<Term>& args) {
    for (const auto& a : args) fn = app(fn, a);
    return fn;
}
Term pi(const Name& x, Term dom, Term cod) { return node(tm::Pi{x, std::move(dom), std::move(cod)}); }
Term arrow(Term dom, Term cod) { return pi(fresh_name("_"), std::move(dom), std::move(cod)); }
Term ind(Telescope delta, Schema schema, std::vector<Term> indices) {
    return node(tm::Ind{std::move(delta), std::move(schema), std::move(indices)});
}
Term intro(Schema schema, std::string label, std::vector<Dim> dims, std::vector<Term> params,
           std::vector<Term> args) {
    return node(tm::Intro{std::move(schema), std::move(label), std::move(dims), std::move(params),
                          std::move(args)});
}
Term fhcom(Dim r, Dim s, Term cap, Tube tube) {
    return node(tm::Fhcom{r, s, std::move(cap), std::move(tube)});
}
Term fcoe(const Name& z, std::vector<Term> line, Dim r, Dim s, Term body) {
    return node(tm::Fcoe{z, std::move(line), r, s, std::move(body)});
}
Term fcom(const Name& z, std::vector<Term> line, Dim r, Dim s, Term cap, Tube tube) {
    return node(tm::Fcom{z, std::move(line), r, s, std::move(cap), std::move(tube)});
}
Term hcom(Term type, Dim r, Dim s, Term cap, Tube tube) {
    return node(tm::Hcom{std::move(type), r, s, std::move(cap), std::move(tube)});
}
Term coe(const Name& z, Term type, Dim r, Dim s, Term body) {
    return node(tm::Coe{z, std::move(type), r, s, std::move(body)});
}
Term com(const Name& z, Term type, Dim r, Dim s, Term cap, Tube tube) {
    return node(tm::Com{z, std::move(type), r, s, std::move(cap), std::move(tube)});
}
Term tcoe(const Name& z, Telescope delta, Schema schema, Dim r, Dim s, Term body) {
    return node(tm::Tcoe{z, std::move(delta), std::move(schema), r, s, std::move(body)});
}
Term elim(std::vector<Name> deltas, const Name& h, Term motive, std::vector<Term> indices, Term scrut,
          ElimList cases) {
    return node(tm::Elim{std::move(deltas), h, std::move(motive), std::move(indices), std::move(scrut),
                         std::move(cases)});
}
Term path(const Name& x, Term type, Term left, Term right) {
    return node(tm::PathTy{x, std::move(type), std::move(left), std::move(right)});
}
Term plam(const Name& x, Term body) { return node(tm::PLam{x, std::move(body)}); }
Term papp(Term p, Dim r) { return node(tm::PApp{std::move(p), r}); }
Term natrec(Term scrut, Term zero, const Name& a, const Name& r, Term suc) {
    return node(tm::NatRec{std::move(scrut), std::move(zero), a, r, std::move(suc)});
}

BTerm bnode(BNode::V v) {
    auto n = std::make_shared<BNode>();
    n->v = std::move(v);
    n->fv = std::visit(BFv{}, n->v);
    return n;
}

BTerm bvar(const Name& p) { return bnode(bt::Var{p}); }
BTerm bintro(std::string label, std::vector<Dim> dims, std::vector<Term> params, std::vector<BTerm> args) {
    return bnode(bt::Intro{std::move(label), std::move(dims), std::move(params), std::move(args)});
}
BTerm bfhcom(std::vector<Term> indices, Dim r, Dim s, BTerm cap, std::vector<BFace> tube) {
    return bnode(bt::Fhcom{std::move(indices), r, s, std::move(cap), std::move(tube)});
}
BTerm bfcoe(const Name& z, std::vector<Term> indices, Dim r, Dim s, BTerm body) {
    return bnode(bt::Fcoe{z, std::move(indices), r, s, std::move(body)});
}
BTerm blam(const Name& a, BTerm body) { return bnode(bt::Lam{a, std::move(body)}); }
BTerm bapp(BTerm fn, Term arg) { return bnode(bt::App{std::move(fn), std::move(arg)}); }
BTerm bnatrec(Term scrut, BTerm zero, const Name& a, const Name& p, BTerm suc) {
    return bnode(bt::NatRec{std::move(scrut), std::move(zero), a, p, std::move(suc)});
}

ArgType self_at(std::vector<Term> indices) {
    auto n = std::make_shared<ArgNode>();
    for (const auto& i : indices) fv::add(n->fv, i->fv);
    n->v = at::SelfAt{std::move(indices)};
    return n;
}

ArgType arg_pi(const Name& b, Term dom, ArgType cod) {
    auto n = std::make_shared<ArgNode>();
    n->fv = cod->fv;
    fv::erase(n->fv.tm, b.id);
    fv::add(n->fv, dom->fv);
    n->v = at::Pi{b, std::move(dom), std::move(cod)};
    return n;
}

Schema schema(std::string name, std::vector<ConstrEntry> entries) {
    auto s = std::make_shared<ConstrList>();
    s->name = std::move(name);
    for (const auto& e : entries) fv::add(s->fv, fv::of_constructor(e.c));
    s->entries = std::move(entries);
    return s;
}

}  // namespace mk

}  // namespace cubind
