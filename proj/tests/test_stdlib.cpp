#include "cubind/checker.hpp"
#include "cubind/subst.hpp"
#include "support.hpp"

using namespace cubind;
using cubind::test::parse;

TEST(Catalog, Entries) {
    std::vector<std::string> names;
    for (const auto& d : catalog()) names.push_back(d.name);
    for (const char* n : {"nat", "bool", "circle", "torus", "torus_glob", "W_bool", "WQ_bool", "trunc_bool",
                          "hub_circle", "loc_bool", "Id_nat"})
        EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    EXPECT_THROW(decl("nope"), std::out_of_range);
}

TEST(Catalog, SmokePrograms) {
    for (const auto& d : catalog())
        for (const auto& s : d.smoke) EXPECT_EQ(observe(s.term, s.type), s.expected) << d.name << " " << s.name;
}

TEST(Catalog, BoolOperations) {
    EXPECT_EQ(observe(bool_not(tt()), bool_type()).str(), "ff");
    EXPECT_EQ(observe(bool_and(tt(), ff()), bool_type()).str(), "ff");
    EXPECT_EQ(observe(bool_or(ff(), tt()), bool_type()).str(), "tt");
}

TEST(Catalog, TorusPresentationsShareCorners) {
    for (const char* name : {"torus", "torus_glob"}) {
        Term t = mk::intro(decl(name).schema, "surf", {Dim::zero(), Dim::one()}, {}, {});
        EXPECT_EQ(observe(t, decl(name).type()).str(), "base") << name;
    }
}

TEST(Catalog, IdentityPathRoundTrip) {
    CheckOptions o;
    o.ext_paths = true;
    Term refl = mk::intro(decl("Id_nat").schema, "refl", {}, {numeral(2)}, {});
    Term path = mk::path(fresh_name("x"), nat_type(), numeral(2), numeral(2));
    Term p = id_to_path(numeral(2), numeral(2), refl);
    EXPECT_FALSE(check_term({}, p, path, o));
    Term q = path_to_id(numeral(2), numeral(2), p);
    EXPECT_FALSE(check_term({}, q, decl("Id_nat").type({numeral(2), numeral(2)}), o));
    // Transport of refl is an fcoe value, so the round trip only agrees at the endpoints.
    Term back = id_to_path(numeral(2), numeral(2), q);
    EXPECT_FALSE(check_term({}, back, path, o));
    for (Dim e : {Dim::zero(), Dim::one()}) EXPECT_EQ(observe(mk::papp(back, e), nat_type()), numeral_tree(2));
}

TEST(DeriveEliminator, ArityChecked) {
    const NamedDecl& id = decl("Id_nat");
    EXPECT_THROW(derive_eliminator(id, {numeral(1)}, numeral(0)), ArityError);
    ElimList short_cases(decl("circle").elim.cases.begin(), decl("circle").elim.cases.begin() + 1);
    EXPECT_THROW(derive_eliminator(decl("circle"), decl("circle").elim.motive, {}, parse("base"), short_cases),
                 ArityError);
}

TEST(DeriveEliminator, DefinitionChecks) {
    for (const auto& d : catalog()) {
        auto [type, body] = eliminator_def(d);
        EXPECT_FALSE(check_type({}, type)) << d.name;
        auto e = check_term({}, body, type);
        EXPECT_FALSE(e) << d.name << ": " << (e ? e->what() : "");
    }
}

TEST(Builders, FreshInstancesCheck) {
    Name a = fresh_name("a");
    NamedDecl w = make_w("W_nat", bool_type(), a, decl("empty").type());
    EXPECT_FALSE(check_constrs({}, w.delta, w.schema));
    NamedDecl tr = make_trunc("trunc_nat", nat_type());
    EXPECT_FALSE(check_constrs({}, tr.delta, tr.schema));
    NamedDecl id = make_id("Id_bool", bool_type());
    EXPECT_FALSE(check_constrs({}, id.delta, id.schema));
}
