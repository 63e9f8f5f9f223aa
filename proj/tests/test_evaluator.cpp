#include <cstdlib>

#include "cubind/evaluator.hpp"
#include "cubind/subst.hpp"
#include "support.hpp"

using namespace cubind;
using cubind::test::parse;
using cubind::test::TermGen;

namespace {

// Reads a value back by hand: counts sucs.
long count_sucs(const Term& v) {
    long n = 0;
    Term t = v;
    for (;;) {
        const auto* in = t->as<tm::Intro>();
        if (!in) return -1;
        if (in->label == "zero") return n;
        if (in->label != "suc") return -1;
        ++n;
        t = eval(in->args[0]);
    }
}

}  // namespace

TEST(Step, LoopEndpointIsBase) {
    Trace tr = trace(parse("lp(0)"), 10);
    ASSERT_EQ(tr.terms.size(), 2u);
    EXPECT_EQ(print(tr.terms[0]), "lp(0)");
    EXPECT_EQ(print(tr.terms[1]), "base");
    EXPECT_EQ(tr.last.kind, StepResult::Kind::IsValue);
}

TEST(Step, IntroAtFreeDimensionIsValue) {
    Name x = fresh_name("x");
    Term t = mk::intro(decl("circle").schema, "lp", {Dim::of(x)}, {}, {});
    EXPECT_TRUE(is_value(t));
    EXPECT_EQ(step(t).kind, StepResult::Kind::IsValue);
}

TEST(Step, CoeReflexive) {
    // Coercion at an inductive type goes through fcoe and tcoe, both reflexive here.
    Term t = parse("coe {z. nat} 1 ~> 1 suc(zero)");
    StepResult st = step(t);
    ASSERT_EQ(st.kind, StepResult::Kind::Steps);
    EXPECT_EQ(print(st.next), "fcoe [z.] 1 ~> 1 tcoe {z. nat} 1 ~> 1 suc(zero)");
    EXPECT_EQ(observe(t, nat_type()), numeral_tree(1));
}

TEST(Step, FhcomTakesSatisfiedFace) {
    Term t = parse("fhcom 0 ~> 1 base [1=1 -> y. lp(y)]");
    StepResult st = step(t);
    ASSERT_EQ(st.kind, StepResult::Kind::Steps);
    EXPECT_EQ(print(st.next), "lp(1)");
}

TEST(Step, FhcomWithoutSatisfiedFaceIsValue) {
    Name x = fresh_name("x"), y = fresh_name("y");
    Term t = mk::fhcom(Dim::zero(), Dim::one(), mk::intro(decl("circle").schema, "base", {}, {}, {}),
                       {Face{{Dim::of(x), Dim::zero()}, y, mk::intro(decl("circle").schema, "base", {}, {}, {})}});
    EXPECT_TRUE(is_value(t));
}

TEST(Step, BetaReduction) {
    Term t = parse("(fun n => suc(n)) zero");
    EXPECT_EQ(observe(t, nat_type()), numeral_tree(1));
}

TEST(Step, ElimOfFhcomPushesThrough) {
    Term t = parse("elim [h. nat] fhcom 0 ~> 1 base [1=1 -> y. base] { base -> zero | lp(x) -> zero }");
    EXPECT_EQ(count_sucs(eval(t)), 0);
}

TEST(Eval, FuelExhaustion) {
    Term t = nat_mul(numeral(5), numeral(5));
    EXPECT_THROW(observe(t, nat_type(), {}, 3), EvalError);
}

TEST(Eval, FuelFromEnvironment) {
    setenv("CUBIND_FUEL", "17", 1);
    EXPECT_EQ(default_fuel(), 17u);
    unsetenv("CUBIND_FUEL");
    EXPECT_EQ(default_fuel(), kDefaultFuel);
}

TEST(Observe, ArithmeticAgreesWithCounting) {
    for (unsigned a = 0; a <= 5; ++a)
        for (unsigned b = 0; b <= 5; ++b) {
            EXPECT_EQ(count_sucs(eval(nat_add(numeral(a), numeral(b)))), long(a + b));
            EXPECT_EQ(count_sucs(eval(nat_mul(numeral(a), numeral(b)))), long(a * b));
        }
}

TEST(Observe, TreeString) {
    EXPECT_EQ(observe(numeral(2), nat_type()).str(), "suc(suc(zero))");
    EXPECT_EQ(observe(parse("lp(1)"), parse("circle")).str(), "base");
}

TEST(Observe, RejectsFunctionTypes) {
    EXPECT_THROW(observe(parse("fun n => n"), parse("nat -> nat")), EvalError);
}

TEST(Optimization, CoeTrivialAtClosedType) {
    Term t = parse("coe {z. nat} 0 ~> 1 suc(zero)");
    EvalOptions opt;
    opt.opt_closed = true;
    StepResult st = step(t, opt);
    ASSERT_EQ(st.kind, StepResult::Kind::Steps);
    EXPECT_EQ(print(st.next), "suc(zero)");
    EXPECT_TRUE(closed_schema(decl("nat").schema));
    EXPECT_TRUE(closed_zero_dim_schema(decl("nat").schema));
    EXPECT_FALSE(closed_zero_dim_schema(decl("circle").schema));
}

TEST(StepProperty, DeterministicAndValueConsistent) {
    TermGen gen(20240611, {}, {});
    for (int i = 0; i < 300; ++i) {
        Term t = gen.term(4);
        StepResult a = step(t), b = step(t);
        ASSERT_EQ(a.kind, b.kind);
        if (a.kind == StepResult::Kind::Steps) EXPECT_TRUE(alpha_equal(a.next, b.next));
        EXPECT_EQ(is_value(t), a.kind == StepResult::Kind::IsValue);
        EXPECT_EQ(observe(t, nat_type()), observe(t, nat_type()));
    }
}

TEST(StepProperty, ReductionPreservesObservation) {
    TermGen gen(5, {}, {});
    for (int i = 0; i < 200; ++i) {
        Term t = gen.term(4);
        StepResult st = step(t);
        if (st.kind != StepResult::Kind::Steps) continue;
        EXPECT_EQ(observe(t, nat_type()), observe(st.next, nat_type())) << print(t);
    }
}

TEST(StepProperty, DimensionSubstitutionCommutesWithEval) {
    Name x = fresh_name("x");
    TermGen gen(77, {}, {x});
    for (int i = 0; i < 200; ++i) {
        Term t = gen.term(3);
        Term v = eval(t);
        for (int e = 0; e < 2; ++e) {
            DimSubst psi = DimSubst::single(x, Dim::constant(e));
            EXPECT_EQ(observe(dim_subst(t, psi), nat_type()), observe(dim_subst(v, psi), nat_type())) << print(t);
        }
    }
}
