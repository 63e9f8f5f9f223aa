#include "cubind/stdlib.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace cubind {

namespace {

Constraint eq(const Name& x, bool e) { return Constraint{Dim::of(x), Dim::constant(e)}; }

ConstrEntry entry(std::string label, std::vector<Name> dims = {}, Telescope params = {},
                  std::vector<Term> indices = {}, ArgCtx args = {}, std::vector<BoundaryFace> boundary = {}) {
    return ConstrEntry{std::move(label),
                       Constructor{std::move(dims), std::move(params), std::move(indices), std::move(args),
                                   std::move(boundary)}};
}

BTerm bcon(std::string label, std::vector<Dim> dims = {}, std::vector<Term> params = {},
           std::vector<BTerm> args = {}) {
    return mk::bintro(std::move(label), std::move(dims), std::move(params), std::move(args));
}

Term con(const Schema& k, std::string label, std::vector<Dim> dims = {}, std::vector<Term> params = {},
         std::vector<Term> args = {}) {
    return mk::intro(k, std::move(label), std::move(dims), std::move(params), std::move(args));
}

// Fresh binders for a case of constructor `c`.
ElimCase open_case(const std::string& label, const Constructor& c) {
    ElimCase ec;
    ec.label = label;
    for (const auto& x : c.dims) ec.dims.push_back(fresh_name(x));
    for (const auto& p : c.params) ec.params.push_back(fresh_name(p.first));
    for (const auto& a : c.args) {
        ec.recs.push_back(fresh_name(a.first));
        ec.results.push_back(fresh_name("r" + std::string(a.first.text())));
    }
    return ec;
}

using CaseBody = std::function<Term(const ElimCase&)>;

ElimTemplate make_template(const Telescope& delta, const Term& motive_body, const std::vector<Name>& deltas,
                           const Name& h, const Schema& k, const CaseBody& body) {
    ElimTemplate t;
    t.motive = Motive{deltas, h, motive_body};
    (void)delta;
    for (const auto& e : k->entries) {
        ElimCase ec = open_case(e.label, e.c);
        ec.body = body(ec);
        t.cases.push_back(std::move(ec));
    }
    return t;
}

std::vector<Name> fresh_deltas(const Telescope& delta) {
    std::vector<Name> out;
    for (const auto& d : delta) out.push_back(fresh_name(d.first));
    return out;
}

std::vector<Term> vars(const std::vector<Name>& xs) {
    std::vector<Term> out;
    for (const auto& x : xs) out.push_back(mk::var(x));
    return out;
}

std::vector<Dim> dims_of(const std::vector<Name>& xs) {
    std::vector<Dim> out;
    for (const auto& x : xs) out.push_back(Dim::of(x));
    return out;
}

// Sends every case to the unit element.
ElimTemplate unit_template(const Telescope& delta, const Schema& k);

// D = the type itself; each case rebuilds its constructor from the results.
ElimTemplate rebuild_template(const Telescope& delta, const Schema& k) {
    std::vector<Name> ds = fresh_deltas(delta);
    Term d = mk::ind(delta, k, vars(ds));
    return make_template(delta, d, ds, fresh_name("h"), k, [&](const ElimCase& ec) {
        return con(k, ec.label, dims_of(ec.dims), vars(ec.params), vars(ec.results));
    });
}

Schema unit_schema() {
    static Schema s = mk::schema("unit", {entry("star")});
    return s;
}

Term unit_type() { return mk::ind({}, unit_schema(), {}); }
Term star() { return con(unit_schema(), "star"); }

ElimTemplate unit_template(const Telescope& delta, const Schema& k) {
    std::vector<Name> ds = fresh_deltas(delta);
    return make_template(delta, unit_type(), ds, fresh_name("h"), k, [](const ElimCase&) { return star(); });
}

NamedDecl simple(std::string name, Schema k, std::vector<std::string> deps = {}) {
    NamedDecl d;
    d.name = std::move(name);
    d.schema = std::move(k);
    d.elim = unit_template({}, d.schema);
    d.deps = std::move(deps);
    if (d.name != "unit") d.deps.push_back("unit");
    return d;
}

Schema empty_schema() {
    static Schema s = mk::schema("empty", {});
    return s;
}

Schema bool_schema() {
    static Schema s = mk::schema("bool", {entry("tt"), entry("ff")});
    return s;
}

Schema nat_schema() {
    static Schema s = [] {
        Name p = fresh_name("n");
        return mk::schema("nat", {entry("zero"), entry("suc", {}, {}, {}, {{p, mk::self_at()}})});
    }();
    return s;
}

Schema circle_schema() {
    static Schema s = [] {
        Name x = fresh_name("x");
        return mk::schema("circle", {entry("base"), entry("lp", {x}, {}, {}, {},
                                                          {{eq(x, false), bcon("base")}, {eq(x, true), bcon("base")}})});
    }();
    return s;
}

std::vector<ConstrEntry> torus_loops() {
    Name x = fresh_name("x"), y = fresh_name("y");
    return {entry("base"),
            entry("lpa", {x}, {}, {}, {}, {{eq(x, false), bcon("base")}, {eq(x, true), bcon("base")}}),
            entry("lpb", {y}, {}, {}, {}, {{eq(y, false), bcon("base")}, {eq(y, true), bcon("base")}})};
}

Schema torus_schema() {
    static Schema s = [] {
        auto es = torus_loops();
        Name x = fresh_name("x"), y = fresh_name("y");
        es.push_back(entry("surf", {x, y}, {}, {}, {},
                           {{eq(x, false), bcon("lpb", {Dim::of(y)})},
                            {eq(y, false), bcon("lpa", {Dim::of(x)})},
                            {eq(x, true), bcon("lpb", {Dim::of(y)})},
                            {eq(y, true), bcon("lpa", {Dim::of(x)})}}));
        return mk::schema("torus", std::move(es));
    }();
    return s;
}

Schema torus_glob_schema() {
    static Schema s = [] {
        auto es = torus_loops();
        Name x = fresh_name("x"), y = fresh_name("y");
        auto side = [&](const char* cap, const char* other) {
            Name z1 = fresh_name("z"), z2 = fresh_name("z");
            return mk::bfhcom({}, Dim::zero(), Dim::one(), bcon(cap, {Dim::of(x)}),
                              {BFace{eq(x, false), z1, bcon("base")}, BFace{eq(x, true), z2, bcon(other, {Dim::of(z2)})}});
        };
        es.push_back(entry("surf", {x, y}, {}, {}, {},
                           {{eq(x, false), bcon("base")},
                            {eq(x, true), bcon("base")},
                            {eq(y, false), side("lpa", "lpb")},
                            {eq(y, true), side("lpb", "lpa")}}));
        return mk::schema("torus_glob", std::move(es));
    }();
    return s;
}

Schema s2_schema() {
    static Schema s = [] {
        Name x = fresh_name("x"), y = fresh_name("y");
        return mk::schema("s2", {entry("base"), entry("surf", {x, y}, {}, {}, {},
                                                      {{eq(x, false), bcon("base")},
                                                       {eq(x, true), bcon("base")},
                                                       {eq(y, false), bcon("base")},
                                                       {eq(y, true), bcon("base")}})});
    }();
    return s;
}

// The globular surf case: com{z.D} 0~>1 R_lpa [x=0 -> R_base | x=1 -> R_lpb] at y=0 becomes
// a single filler that does not depend on y when every case is the unit element.
Term glob_surf_unit(const Name& x) {
    Name z1 = fresh_name("z"), z2 = fresh_name("z"), z = fresh_name("z");
    return mk::com(z, unit_type(), Dim::zero(), Dim::one(), star(),
                   {Face{eq(x, false), z1, star()}, Face{eq(x, true), z2, star()}});
}

std::vector<NamedDecl> build_catalog() {
    std::vector<NamedDecl> out;
    out.push_back(simple("empty", empty_schema()));
    out.push_back(simple("unit", unit_schema()));
    out.push_back(simple("bool", bool_schema()));
    out.push_back(simple("nat", nat_schema()));
    out.push_back(simple("circle", circle_schema(), {"nat"}));
    out.push_back(simple("torus", torus_schema()));
    {
        NamedDecl d = simple("torus_glob", torus_glob_schema());
        ElimCase& surf = d.elim.cases[3];
        surf.body = glob_surf_unit(surf.dims[0]);
        out.push_back(std::move(d));
    }
    out.push_back(simple("s2", s2_schema()));
    out.push_back(make_w("W_bool", bool_type(), fresh_name("a"), mk::ind({}, empty_schema(), {})));
    {
        Name c = fresh_name("c");
        Name c2 = fresh_name("c");
        out.push_back(make_wq("WQ_bool", bool_type(), fresh_name("a"), mk::ind({}, empty_schema(), {}), bool_type(),
                              mk::lam(c, tt()), mk::lam(c2, ff())));
    }
    out.push_back(make_trunc("trunc_bool", bool_type()));
    out.push_back(make_hub("hub_circle", bool_type(), out[4]));
    out.push_back(make_hub("hub_s2", bool_type(), out[7]));
    {
        Name i = fresh_name("i"), i2 = fresh_name("i"), s = fresh_name("s");
        Term f = mk::lam(i2, mk::lam(s, star()));
        out.push_back(make_loc("loc_bool", bool_type(), unit_type(), i, bool_type(), unit_type(), f));
    }
    out.push_back(make_id("Id_nat", nat_type()));

    auto find = [&](const std::string& n) -> NamedDecl& {
        for (auto& d : out)
            if (d.name == n) return d;
        throw std::out_of_range(n);
    };

    // nat: addition and multiplication tables.
    for (unsigned a = 0; a <= 5; ++a)
        for (unsigned b = 0; b <= 5; ++b) {
            find("nat").smoke.push_back({"add " + std::to_string(a) + " " + std::to_string(b),
                                         nat_add(numeral(a), numeral(b)), nat_type(), numeral_tree(a + b)});
            find("nat").smoke.push_back({"mul " + std::to_string(a) + " " + std::to_string(b),
                                         nat_mul(numeral(a), numeral(b)), nat_type(), numeral_tree(a * b)});
        }
    // bool connectives.
    ObservationTree t{"tt", {}}, f{"ff", {}};
    auto& b = find("bool").smoke;
    b.push_back({"not tt", bool_not(tt()), bool_type(), f});
    b.push_back({"not ff", bool_not(ff()), bool_type(), t});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Term bx = x ? tt() : ff(), by = y ? tt() : ff();
            std::string nm = std::string(x ? "tt" : "ff") + " " + (y ? "tt" : "ff");
            b.push_back({"and " + nm, bool_and(bx, by), bool_type(), (x && y) ? t : f});
            b.push_back({"or " + nm, bool_or(bx, by), bool_type(), (x || y) ? t : f});
        }
    // circle elimination.
    auto& c = find("circle").smoke;
    c.push_back({"elim base", circle_to_nat(con(circle_schema(), "base"), 2), nat_type(), numeral_tree(2)});
    for (int e = 0; e < 2; ++e)
        c.push_back({"elim lp " + std::to_string(e), circle_to_nat(con(circle_schema(), "lp", {Dim::constant(e)}), 3),
                     nat_type(), numeral_tree(3)});
    c.push_back({"lp 0", con(circle_schema(), "lp", {Dim::zero()}), find("circle").type(), ObservationTree{"base", {}}});
    // Idelim on refl.
    auto& id = find("Id_nat").smoke;
    for (unsigned n = 0; n <= 3; ++n) {
        Name a = fresh_name("a");
        Term refl = con(find("Id_nat").schema, "refl", {}, {numeral(n)});
        id.push_back({"J refl " + std::to_string(n), id_elim_nat(numeral(n), numeral(n), refl, a, nat_add(mk::var(a), numeral(1))),
                      nat_type(), numeral_tree(n + 1)});
    }
    // Truncation and W-types observed after a trip through their eliminators.
    {
        const NamedDecl& tr = find("trunc_bool");
        Term glue = con(tr.schema, "trglue", {Dim::zero()}, {},
                        {con(tr.schema, "trpt", {}, {ff()}), con(tr.schema, "trpt", {}, {tt()})});
        find("trunc_bool").smoke.push_back({"trglue 0", glue, tr.type(), ObservationTree{"trpt", {f}}});
        find("trunc_bool").smoke.push_back({"rebuild trpt", derive_eliminator(tr, {}, con(tr.schema, "trpt", {}, {tt()})),
                                            tr.type(), ObservationTree{"trpt", {t}}});
    }
    {
        const NamedDecl& w = find("W_bool");
        Name e = fresh_name("e");
        Term leaf = con(w.schema, "wsup", {}, {tt()},
                        {mk::lam(e, mk::elim({}, fresh_name("h"), w.type(), {}, mk::var(e), {}))});
        find("W_bool").smoke.push_back({"welim leaf", derive_eliminator(w, {}, leaf), unit_type(), ObservationTree{"star", {}}});
    }
    return out;
}

}  // namespace

Term nat_type() { return mk::ind({}, nat_schema(), {}); }
Term bool_type() { return mk::ind({}, bool_schema(), {}); }
Term tt() { return con(bool_schema(), "tt"); }
Term ff() { return con(bool_schema(), "ff"); }

Term numeral(unsigned n) {
    Term t = con(nat_schema(), "zero");
    for (unsigned i = 0; i < n; ++i) t = con(nat_schema(), "suc", {}, {}, {t});
    return t;
}

ObservationTree numeral_tree(unsigned n) {
    ObservationTree t{"zero", {}};
    for (unsigned i = 0; i < n; ++i) t = ObservationTree{"suc", {t}};
    return t;
}

namespace {

Term nat_rec(const Term& scrut, const Term& z, const std::function<Term(const Term&)>& s) {
    Name h = fresh_name("h"), p = fresh_name("n"), r = fresh_name("r");
    ElimList cases{ElimCase{"zero", {}, {}, {}, {}, z}, ElimCase{"suc", {}, {}, {p}, {r}, s(mk::var(r))}};
    return mk::elim({}, h, nat_type(), {}, scrut, std::move(cases));
}

Term bool_case(const Term& scrut, const Term& on_tt, const Term& on_ff) {
    return mk::elim({}, fresh_name("h"), bool_type(), {}, scrut,
                    {ElimCase{"tt", {}, {}, {}, {}, on_tt}, ElimCase{"ff", {}, {}, {}, {}, on_ff}});
}

}  // namespace

Term nat_add(const Term& m, const Term& n) {
    return nat_rec(m, n, [](const Term& r) { return con(nat_schema(), "suc", {}, {}, {r}); });
}

Term nat_mul(const Term& m, const Term& n) {
    return nat_rec(m, numeral(0), [&](const Term& r) { return nat_add(n, r); });
}

Term bool_not(const Term& b) { return bool_case(b, ff(), tt()); }
Term bool_and(const Term& a, const Term& b) { return bool_case(a, b, ff()); }
Term bool_or(const Term& a, const Term& b) { return bool_case(a, tt(), b); }

Term circle_to_nat(const Term& m, unsigned n) {
    Name x = fresh_name("x");
    return mk::elim({}, fresh_name("h"), nat_type(), {}, m,
                    {ElimCase{"base", {}, {}, {}, {}, numeral(n)}, ElimCase{"lp", {x}, {}, {}, {}, numeral(n)}});
}

Term path_to_id(const Term& a, const Term& b, const Term& p) {
    (void)b;
    const NamedDecl& id = decl("Id_nat");
    Name z = fresh_name("z");
    Term line = id.type({a, mk::papp(p, Dim::of(z))});
    return mk::coe(z, line, Dim::zero(), Dim::one(), mk::intro(id.schema, "refl", {}, {a}, {}));
}

Term id_to_path(const Term& a, const Term& b, const Term& q) {
    Name d0 = fresh_name("a"), d1 = fresh_name("b"), h = fresh_name("h"), x = fresh_name("x"), w = fresh_name("w");
    Term motive = mk::path(fresh_name("_"), nat_type(), mk::var(d0), mk::var(d1));
    return mk::elim({d0, d1}, h, motive, {a, b}, q, {ElimCase{"refl", {}, {w}, {}, {}, mk::plam(x, mk::var(w))}});
}

Term id_elim_nat(const Term& m, const Term& n, const Term& q, const Name& a, const Term& r) {
    Name d0 = fresh_name("a"), d1 = fresh_name("b"), h = fresh_name("h");
    return mk::elim({d0, d1}, h, nat_type(), {m, n}, q, {ElimCase{"refl", {}, {a}, {}, {}, r}});
}

NamedDecl make_w(const std::string& name, const Term& a_type, const Name& a, const Term& b_family) {
    Name g = fresh_name("g");
    NamedDecl d;
    d.name = name;
    d.schema = mk::schema(name, {entry("wsup", {}, {{a, a_type}}, {}, {{g, mk::arg_pi(fresh_name("b"), b_family, mk::self_at())}})});
    d.elim = unit_template({}, d.schema);
    d.deps = {"bool", "empty", "unit"};
    return d;
}

NamedDecl make_wq(const std::string& name, const Term& a_type, const Name& a, const Term& b_family,
                  const Term& c_type, const Term& f0, const Term& f1) {
    Name g = fresh_name("g"), c = fresh_name("c"), x = fresh_name("x"), g0 = fresh_name("g0"), g1 = fresh_name("g1");
    Term fc0 = mk::app(f0, mk::var(c)), fc1 = mk::app(f1, mk::var(c));
    auto b_at = [&](const Term& t) { return subst1(b_family, a, t); };
    NamedDecl d;
    d.name = name;
    d.schema = mk::schema(
        name, {entry("wqsup", {}, {{a, a_type}}, {}, {{g, mk::arg_pi(fresh_name("b"), b_family, mk::self_at())}}),
               entry("wqcell", {x}, {{c, c_type}}, {},
                     {{g0, mk::arg_pi(fresh_name("b"), b_at(fc0), mk::self_at())},
                      {g1, mk::arg_pi(fresh_name("b"), b_at(fc1), mk::self_at())}},
                     {{eq(x, false), bcon("wqsup", {}, {fc0}, {mk::bvar(g0)})},
                      {eq(x, true), bcon("wqsup", {}, {fc1}, {mk::bvar(g1)})}})});
    d.elim = unit_template({}, d.schema);
    d.deps = {"bool", "empty", "unit"};
    return d;
}

NamedDecl make_trunc(const std::string& name, const Term& a_type) {
    Name a = fresh_name("a"), x = fresh_name("x"), t0 = fresh_name("t0"), t1 = fresh_name("t1");
    NamedDecl d;
    d.name = name;
    d.schema = mk::schema(name, {entry("trpt", {}, {{a, a_type}}),
                                 entry("trglue", {x}, {}, {}, {{t0, mk::self_at()}, {t1, mk::self_at()}},
                                       {{eq(x, false), mk::bvar(t0)}, {eq(x, true), mk::bvar(t1)}})});
    d.elim = rebuild_template({}, d.schema);
    d.deps = {"bool"};
    return d;
}

NamedDecl make_hub(const std::string& name, const Term& a_type, const NamedDecl& sphere) {
    Name a = fresh_name("a"), f = fresh_name("f"), f2 = fresh_name("f"), s = fresh_name("s"), x = fresh_name("x");
    Term c = sphere.type();
    NamedDecl d;
    d.name = name;
    d.schema = mk::schema(
        name, {entry("trpt", {}, {{a, a_type}}),
               entry("hub", {}, {}, {}, {{f, mk::arg_pi(fresh_name("c"), c, mk::self_at())}}),
               entry("spoke", {x}, {{s, c}}, {}, {{f2, mk::arg_pi(fresh_name("c"), c, mk::self_at())}},
                     {{eq(x, false), bcon("hub", {}, {}, {mk::bvar(f2)})},
                      {eq(x, true), mk::bapp(mk::bvar(f2), mk::var(s))}})});
    d.elim = rebuild_template({}, d.schema);
    d.deps = {"bool", sphere.name};
    return d;
}

NamedDecl make_loc(const std::string& name, const Term& a_type, const Term& i_type, const Name& i,
                   const Term& s_family, const Term& t_family, const Term& f) {
    auto at = [&](const Term& fam, const Name& j) { return subst1(fam, i, mk::var(j)); };
    auto fis = [&](const Name& j, const Term& s) { return mk::app(mk::app(f, mk::var(j)), s); };
    std::vector<ConstrEntry> es;
    Name a = fresh_name("a");
    es.push_back(entry("loc", {}, {{a, a_type}}));
    for (const char* lbl : {"ext", "ext'"}) {
        Name j = fresh_name("i"), t = fresh_name("t"), g = fresh_name("g");
        es.push_back(entry(lbl, {}, {{j, i_type}, {t, at(t_family, j)}}, {},
                           {{g, mk::arg_pi(fresh_name("s"), at(s_family, j), mk::self_at())}}));
    }
    {
        Name x = fresh_name("x"), j = fresh_name("i"), s = fresh_name("s"), g = fresh_name("g");
        es.push_back(entry("rtr", {x}, {{j, i_type}, {s, at(s_family, j)}}, {},
                           {{g, mk::arg_pi(fresh_name("s"), at(s_family, j), mk::self_at())}},
                           {{eq(x, false), mk::bapp(mk::bvar(g), mk::var(s))},
                            {eq(x, true), bcon("ext", {}, {mk::var(j), fis(j, mk::var(s))}, {mk::bvar(g)})}}));
    }
    {
        Name x = fresh_name("x"), j = fresh_name("i"), t = fresh_name("t"), h = fresh_name("h"), s = fresh_name("s");
        es.push_back(entry("rtr'", {x}, {{j, i_type}, {t, at(t_family, j)}}, {},
                           {{h, mk::arg_pi(fresh_name("t"), at(t_family, j), mk::self_at())}},
                           {{eq(x, false), mk::bapp(mk::bvar(h), mk::var(t))},
                            {eq(x, true), bcon("ext'", {}, {mk::var(j), mk::var(t)},
                                               {mk::blam(s, mk::bapp(mk::bvar(h), fis(j, mk::var(s))))})}}));
    }
    NamedDecl d;
    d.name = name;
    d.schema = mk::schema(name, std::move(es));
    d.elim = rebuild_template({}, d.schema);
    d.deps = {"bool", "unit"};
    return d;
}

NamedDecl make_id(const std::string& name, const Term& a_type) {
    Name d0 = fresh_name("a0"), d1 = fresh_name("a1"), a = fresh_name("a");
    NamedDecl d;
    d.name = name;
    d.delta = {{d0, a_type}, {d1, a_type}};
    d.schema = mk::schema(name, {entry("refl", {}, {{a, a_type}}, {mk::var(a), mk::var(a)})});
    d.elim = unit_template(d.delta, d.schema);
    d.deps = {"nat", "unit"};
    return d;
}

const std::vector<NamedDecl>& catalog() {
    static std::once_flag once;
    static std::vector<NamedDecl> c;
    std::call_once(once, [] { c = build_catalog(); });
    return c;
}

const NamedDecl& decl(const std::string& name) {
    for (const auto& d : catalog())
        if (d.name == name) return d;
    throw std::out_of_range("no catalog entry " + name);
}

Term derive_eliminator(const NamedDecl& d, const Motive& motive, std::vector<Term> indices, Term scrut,
                       ElimList cases) {
    if (motive.deltas.size() != d.delta.size()) throw ArityError("motive binds the wrong number of indices");
    if (indices.size() != d.delta.size()) throw ArityError("wrong number of indices");
    if (cases.size() != d.schema->entries.size())
        throw ArityError(d.name + " has " + std::to_string(d.schema->entries.size()) + " constructors, got " +
                         std::to_string(cases.size()) + " cases");
    for (size_t i = 0; i < cases.size(); ++i) {
        const auto& e = d.schema->entries[i];
        const auto& ec = cases[i];
        if (ec.label != e.label) throw ArityError("case " + ec.label + " out of order");
        if (ec.dims.size() != e.c.dims.size() || ec.params.size() != e.c.params.size() ||
            ec.recs.size() != e.c.args.size() || ec.results.size() != e.c.args.size())
            throw ArityError("case " + ec.label + " binds the wrong number of variables");
    }
    return mk::elim(motive.deltas, motive.h, motive.body, std::move(indices), std::move(scrut), std::move(cases));
}

Term derive_eliminator(const NamedDecl& d, std::vector<Term> indices, Term scrut) {
    return derive_eliminator(d, d.elim.motive, std::move(indices), std::move(scrut), d.elim.cases);
}

}  // namespace cubind

namespace cubind {

std::pair<Term, Term> eliminator_def(const NamedDecl& d) {
    std::vector<Name> ds;
    for (const auto& x : d.delta) ds.push_back(fresh_name(x.first));
    Name m = fresh_name("m");
    Subst s;
    for (size_t i = 0; i < ds.size(); ++i) s.add_term(d.elim.motive.deltas[i], mk::var(ds[i]));
    s.add_term(d.elim.motive.h, mk::var(m));
    std::vector<Term> idx;
    for (const auto& x : ds) idx.push_back(mk::var(x));
    Term type = mk::pi(m, d.type(idx), substitute(d.elim.motive.body, s));
    Term body = mk::lam(m, derive_eliminator(d, idx, mk::var(m)));
    for (size_t i = ds.size(); i-- > 0;) {
        Subst prefix;
        for (size_t j = 0; j < i; ++j) prefix.add_term(d.delta[j].first, mk::var(ds[j]));
        type = mk::pi(ds[i], substitute(d.delta[i].second, prefix), type);
        body = mk::lam(ds[i], body);
    }
    return {type, body};
}

namespace {

void add_deps(const NamedDecl& d, std::vector<std::string>& seen) {
    for (const auto& n : d.deps) add_deps(decl(n), seen);
    if (std::find(seen.begin(), seen.end(), d.name) == seen.end()) seen.push_back(d.name);
}

}  // namespace

SourceFile stdlib_file(const NamedDecl& d) {
    std::vector<std::string> names;
    add_deps(d, names);
    SourceFile f;
    for (const auto& n : names) {
        const NamedDecl& x = decl(n);
        Decl dd;
        dd.kind = Decl::Kind::Data;
        dd.name = x.name;
        dd.data = DataInfo{x.name, x.delta, x.schema};
        f.decls.push_back(dd);
    }
    auto [type, body] = eliminator_def(d);
    Decl e;
    e.kind = Decl::Kind::Def;
    e.name = d.name + "_elim";
    e.type = type;
    e.term = body;
    f.decls.push_back(e);
    for (const auto& s : d.smoke) {
        Decl o;
        o.kind = Decl::Kind::Observe;
        o.term = s.term;
        o.type = s.type;
        o.expect = s.expected;
        f.decls.push_back(o);
    }
    return f;
}

Env prelude() {
    Env env;
    const auto& c = catalog();
    for (const auto& d : c) env.add_data(DataInfo{d.name, d.delta, d.schema}, false);
    return env;
}

}  // namespace cubind
