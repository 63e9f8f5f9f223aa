#include "cubind/checker.hpp"
#include "cubind/suites.hpp"
#include "support.hpp"

using namespace cubind;
using cubind::test::parse;
using cubind::test::TermGen;
using K = CheckError::Kind;

namespace {

std::optional<K> kind_of(const std::string& src, CheckOptions o = {}) {
    auto e = check_source(src, o);
    if (!e) return std::nullopt;
    return e->kind;
}

const char* kNat = "data unit = star\ndata nat = zero | suc <n : self>\n";

}  // namespace

TEST(Checker, CatalogSchemasAndEliminators) {
    for (const auto& d : catalog()) {
        EXPECT_FALSE(check_telescope({}, d.delta)) << d.name;
        auto e = check_constrs({}, d.delta, d.schema);
        EXPECT_FALSE(e) << d.name << ": " << (e ? e->what() : "");
        auto l = check_elim_list({}, d.delta, d.schema, d.elim.motive, d.elim.cases);
        EXPECT_FALSE(l) << d.name << ": " << (l ? l->what() : "");
    }
}

TEST(Checker, SmokeProgramsTypecheck) {
    for (const auto& d : catalog())
        for (const auto& s : d.smoke) EXPECT_FALSE(check_term({}, s.term, s.type)) << d.name << " " << s.name;
}

TEST(Checker, InferIntroAndElim) {
    InferResult r = infer_term({}, parse("suc(suc(zero))"));
    ASSERT_FALSE(r.error);
    EXPECT_TRUE(convert({}, r.type, nat_type()));
    InferResult e = infer_term({}, parse("elim [h. nat] lp(1) { base -> zero | lp(x) -> zero }"));
    ASSERT_FALSE(e.error);
    EXPECT_TRUE(convert({}, e.type, nat_type()));
}

TEST(Checker, ConversionUsesEvaluation) {
    EXPECT_TRUE(convert({}, nat_add(numeral(2), numeral(1)), numeral(3)));
    EXPECT_FALSE(convert({}, numeral(2), numeral(3)));
    Name f = fresh_name("f"), x = fresh_name("x");
    CheckCtx ctx = CheckCtx{}.with_var(f, mk::arrow(nat_type(), nat_type()));
    // Eta for functions.
    EXPECT_TRUE(convert(ctx, mk::var(f), mk::lam(x, mk::app(mk::var(f), mk::var(x)))));
}

TEST(Checker, LoopEndpointsAgree) {
    Name x = fresh_name("x");
    CheckCtx ctx = CheckCtx{}.with_dim(x);
    EXPECT_FALSE(check_term(ctx, mk::intro(decl("circle").schema, "lp", {Dim::of(x)}, {}, {}), parse("circle")));
    // A free dimension that is not in scope.
    EXPECT_TRUE(check_term({}, mk::intro(decl("circle").schema, "lp", {Dim::of(x)}, {}, {}), parse("circle")));
}

TEST(Checker, KindsOfErrors) {
    std::string nat = kNat;
    EXPECT_EQ(kind_of(nat + "data c = base | lp(x) [x=0 -> base]\n"), K::Validity);
    EXPECT_EQ(kind_of(nat + "data c = lp(x) [x=0 -> base | x=1 -> base] | base\n"), K::LabelOrder);
    EXPECT_EQ(kind_of(nat + "data c = a | b | p(x) [x=0 -> a | x=1 -> b]\ndata d = q | r(x) [x=0 -> q | x=1 -> q | x=0 -> q]\n"),
              std::nullopt);
    EXPECT_EQ(kind_of(nat + "eval hcom {nat} 0 ~> 1 zero [1=1 -> y. suc(zero)]\n"), K::Conversion);
    EXPECT_EQ(kind_of(nat + "def p : path {x. nat} zero zero = <x> zero\n"), K::Unsupported);
    CheckOptions paths;
    paths.ext_paths = true;
    EXPECT_EQ(kind_of(nat + "def p : path {x. nat} zero zero = <x> zero\n", paths), std::nullopt);
}

TEST(Checker, MutationCorpusKinds) {
    auto corpus = mutation_corpus();
    EXPECT_GE(corpus.size(), 20u);
    for (const auto& m : corpus) {
        auto e = m.run();
        ASSERT_TRUE(e) << m.name;
        EXPECT_EQ(e->kind, m.expected) << m.name << ": " << e->what();
    }
}

TEST(Checker, NatrecNeedsExtension) {
    CheckOptions ext;
    ext.ext_natrec = true;
    EXPECT_EQ(kind_of(natrec_demo_source()), K::Unsupported);
    EXPECT_EQ(kind_of(natrec_demo_source(), ext), std::nullopt);
}

TEST(CheckerProperty, GeneratedTermsCheckAndInferNat) {
    Name x = fresh_name("x");
    TermGen gen(31337, {}, {x});
    CheckCtx ctx = CheckCtx{}.with_dim(x);
    for (int i = 0; i < 150; ++i) {
        Term t = gen.term(3);
        auto e = check_term(ctx, t, nat_type());
        EXPECT_FALSE(e) << print(t) << ": " << (e ? e->what() : "");
        // Evaluation preserves the type.
        Term v = eval(t);
        EXPECT_FALSE(check_term(ctx, v, nat_type())) << print(v);
    }
}
