#include "cubind/subst.hpp"
#include "support.hpp"

using namespace cubind;
using cubind::test::TermGen;

TEST(Names, FreshIdsAreDistinct) {
    Name a = fresh_name("x"), b = fresh_name("x");
    EXPECT_NE(a, b);
    EXPECT_EQ(a.text(), "x");
}

TEST(FreeVars, BinderRemovesVariable) {
    Name x = fresh_name("x"), y = fresh_name("y");
    Term t = mk::lam(x, mk::app(mk::var(x), mk::var(y)));
    EXPECT_EQ(t->fv.tm, std::vector<uint64_t>{y.id});
}

TEST(FreeVars, CoeLineBindsDimension) {
    Name z = fresh_name("z"), x = fresh_name("x");
    Term t = mk::coe(z, nat_type(), Dim::of(x), Dim::zero(), numeral(0));
    EXPECT_EQ(t->fv.dm, std::vector<uint64_t>{x.id});
}

TEST(Alpha, RenamedBindersAreEqual) {
    Name x = fresh_name("x"), y = fresh_name("y");
    EXPECT_TRUE(alpha_equal(mk::lam(x, mk::var(x)), mk::lam(y, mk::var(y))));
    EXPECT_FALSE(alpha_equal(mk::lam(x, mk::var(x)), mk::lam(y, mk::var(x))));
}

TEST(Subst, AvoidsCapture) {
    Name x = fresh_name("x"), y = fresh_name("y");
    // (fun x => y)[x/y] must not capture.
    Term t = subst1(mk::lam(x, mk::var(y)), y, mk::var(x));
    const auto* lam = t->as<tm::Lam>();
    ASSERT_TRUE(lam);
    const auto* body = lam->body->as<tm::Var>();
    ASSERT_TRUE(body);
    EXPECT_EQ(body->x, x);
    EXPECT_NE(lam->x, x);
}

TEST(Subst, DimensionIntoTubeConstraint) {
    Name x = fresh_name("x"), y = fresh_name("y");
    Term h = mk::hcom(nat_type(), Dim::zero(), Dim::one(), numeral(0),
                      {Face{{Dim::of(x), Dim::zero()}, y, numeral(0)}});
    Term g = dsubst1(h, x, Dim::zero());
    const auto* n = g->as<tm::Hcom>();
    ASSERT_TRUE(n);
    EXPECT_TRUE(n->tube[0].xi.lhs == Dim::zero());
    EXPECT_TRUE(g->fv.dm.empty());
}

TEST(SubstProperty, ComposedDimensionSubstitutions) {
    Name x = fresh_name("x"), y = fresh_name("y");
    TermGen gen(1234, {}, {x, y});
    for (int i = 0; i < 200; ++i) {
        Term t = gen.term(4);
        DimSubst a, b;
        a.set(x, gen.dim());
        b.set(y, gen.dim());
        b.set(x, gen.dim());
        Term lhs = dim_subst(dim_subst(t, a), b);
        Term rhs = dim_subst(t, DimSubst::then(a, b));
        EXPECT_TRUE(alpha_equal(lhs, rhs)) << print(t);
    }
}

TEST(SubstProperty, FreshVariableSubstitutionIsIdentity) {
    Name v = fresh_name("v"), unused = fresh_name("u");
    TermGen gen(99, {v}, {});
    for (int i = 0; i < 200; ++i) {
        Term t = gen.term(4);
        EXPECT_TRUE(alpha_equal(subst1(t, unused, numeral(7)), t));
        Term s = subst1(t, v, numeral(1));
        EXPECT_TRUE(s->fv.tm.empty()) << print(t);
    }
}

TEST(Printer, FreshHintsDoNotClash) {
    Name x1 = fresh_name("x"), x2 = fresh_name("x");
    Term t = mk::lam(x1, mk::lam(x2, mk::app(mk::var(x1), mk::var(x2))));
    std::string s = print(t);
    EXPECT_EQ(s, "fun x => fun x1 => x x1");
}
