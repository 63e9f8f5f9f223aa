#include "cubind/constraints.hpp"
#include "cubind/subst.hpp"
#include "support.hpp"

using namespace cubind;

namespace {
Constraint eq(Dim a, Dim b) { return Constraint{a, b}; }
}  // namespace

TEST(Validity, Definition) {
    Name x = fresh_name("x"), y = fresh_name("y");
    Dim dx = Dim::of(x), dy = Dim::of(y);
    EXPECT_FALSE(ctx_valid({}));
    EXPECT_TRUE(ctx_valid({eq(Dim::zero(), Dim::zero())}));
    EXPECT_TRUE(ctx_valid({eq(dx, dx)}));
    EXPECT_TRUE(ctx_valid({eq(dx, Dim::zero()), eq(dx, Dim::one())}));
    EXPECT_TRUE(ctx_valid({eq(Dim::zero(), dx), eq(dx, Dim::one())}));
    EXPECT_FALSE(ctx_valid({eq(dx, Dim::zero())}));
    EXPECT_FALSE(ctx_valid({eq(dx, Dim::zero()), eq(dy, Dim::one())}));
    // Satisfied under every closing substitution but not valid.
    EXPECT_FALSE(ctx_valid({eq(dx, dy), eq(dx, Dim::zero()), eq(dy, Dim::zero())}));
}

TEST(Mgu, Cases) {
    Name x = fresh_name("x"), y = fresh_name("y");
    auto m = constraint_mgu(eq(Dim::of(x), Dim::one()));
    ASSERT_TRUE(m);
    EXPECT_TRUE(m->apply(Dim::of(x)) == Dim::one());
    EXPECT_FALSE(constraint_mgu(eq(Dim::zero(), Dim::one())));
    auto u = constraint_mgu(eq(Dim::of(x), Dim::of(y)));
    ASSERT_TRUE(u);
    EXPECT_TRUE(u->apply(Dim::of(x)) == u->apply(Dim::of(y)));
    EXPECT_FALSE(constraints_mgu({eq(Dim::of(x), Dim::zero()), eq(Dim::of(x), Dim::one())}));
}

TEST(MguProperty, UnifierSatisfiesEveryConstraint) {
    Name vs[3] = {fresh_name("x"), fresh_name("y"), fresh_name("z")};
    std::mt19937 rng(7);
    auto dim = [&] {
        unsigned k = rng() % 5;
        return k < 2 ? Dim::constant(k) : Dim::of(vs[k - 2]);
    };
    for (int i = 0; i < 2000; ++i) {
        ConstraintCtx cs;
        for (unsigned k = 0, n = 1 + rng() % 3; k < n; ++k) cs.push_back(eq(dim(), dim()));
        auto m = constraints_mgu(cs);
        // Brute force satisfiability.
        bool sat = false;
        for (unsigned mask = 0; mask < 8; ++mask) {
            DimSubst psi;
            for (int v = 0; v < 3; ++v) psi.set(vs[v], Dim::constant((mask >> v) & 1));
            bool all = true;
            for (const auto& c : cs) all = all && constraint_satisfied(dim_subst(c, psi));
            sat = sat || all;
        }
        ASSERT_EQ(bool(m), sat);
        if (m)
            for (const auto& c : cs) EXPECT_TRUE(m->apply(c.lhs) == m->apply(c.rhs));
    }
}

TEST(Height, PositionInSchema) {
    const Schema& t = decl("torus").schema;
    EXPECT_EQ(height(*t, "base"), 0);
    EXPECT_EQ(height(*t, "lpa"), 1);
    EXPECT_EQ(height(*t, "surf"), 3);
    Name p = fresh_name("p");
    EXPECT_EQ(height(*t, mk::bvar(p)), -1);
    EXPECT_EQ(height(*t, mk::bintro("lpb", {Dim::zero()}, {}, {})), 2);
    EXPECT_THROW(height(*t, "nope"), UnknownLabel);
}
