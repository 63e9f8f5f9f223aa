#include "cubind/interpretation.hpp"
#include "cubind/subst.hpp"
#include "support.hpp"

using namespace cubind;

TEST(Tyatty, SelfIsTheFamily) {
    Family fam{{}, decl("circle").type()};
    EXPECT_TRUE(alpha_equal(tyatty(mk::self_at(), fam), decl("circle").type()));
}

TEST(Tyatty, PiArgumentBecomesFunction) {
    Name b = fresh_name("b");
    Family fam{{}, decl("circle").type()};
    Term t = tyatty(mk::arg_pi(b, bool_type(), mk::self_at()), fam);
    EXPECT_TRUE(alpha_equal(t, mk::arrow(bool_type(), decl("circle").type())));
}

TEST(Tyatty, IndexedFamilyTakesIndices) {
    const NamedDecl& id = decl("Id_nat");
    Name a0 = fresh_name("a0"), a1 = fresh_name("a1");
    Family fam{{a0, a1}, mk::ind(id.delta, id.schema, {mk::var(a0), mk::var(a1)})};
    Term t = tyatty(mk::self_at({numeral(1), numeral(2)}), fam);
    EXPECT_TRUE(alpha_equal(t, id.type({numeral(1), numeral(2)})));
}

TEST(Insttm, BoundaryOfLoopIsBase) {
    const NamedDecl& c = decl("circle");
    const Constructor& lp = *c.schema->find("lp");
    for (const auto& f : lp.boundary) {
        Term t = insttm({}, f.body, c.schema, {});
        EXPECT_TRUE(alpha_equal(t, mk::intro(c.schema, "base", {}, {}, {})));
    }
}

TEST(Insttm, VariablesAreReplacedByArguments) {
    const NamedDecl& tr = decl("trunc_bool");
    const Constructor& g = *tr.schema->find("trglue");
    Term t0 = mk::intro(tr.schema, "trpt", {}, {tt()}, {});
    Term t1 = mk::intro(tr.schema, "trpt", {}, {ff()}, {});
    EXPECT_TRUE(alpha_equal(insttm(g.args, g.boundary[0].body, tr.schema, {t0, t1}), t0));
    EXPECT_TRUE(alpha_equal(insttm(g.args, g.boundary[1].body, tr.schema, {t0, t1}), t1));
}

TEST(Insttm, FunctionArgumentApplied) {
    // hub spoke: x=1 -> f s.
    const NamedDecl& h = decl("hub_circle");
    const Constructor& sp = *h.schema->find("spoke");
    Name s = sp.params[0].first;
    Name f = fresh_name("f");
    Term body = insttm(sp.args, sp.boundary[1].body, h.schema, {mk::var(f)});
    EXPECT_TRUE(alpha_equal(body, mk::app(mk::var(f), mk::var(s))));
}

TEST(Mcoe, EmptyAndClosed) {
    Name z = fresh_name("z");
    EXPECT_TRUE(mcoe(z, {}, Dim::zero(), Dim::one(), {}).empty());
    Name a = fresh_name("a");
    auto out = mcoe(z, {{a, nat_type()}}, Dim::zero(), Dim::one(), {numeral(2)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_TRUE(out[0]->as<tm::Coe>());
}

TEST(FindCase, ByLabel) {
    const ElimList& cases = decl("circle").elim.cases;
    ASSERT_TRUE(find_case(cases, "lp"));
    EXPECT_EQ(find_case(cases, "lp")->label, "lp");
    EXPECT_FALSE(find_case(cases, "surf"));
}

TEST(InstantiateCase, SubstitutesDimensions) {
    const ElimCase& lp = *find_case(decl("circle").elim.cases, "lp");
    Term t = instantiate_case(lp, {Dim::one()}, {}, {}, {});
    EXPECT_TRUE(t->fv.dm.empty());
}
