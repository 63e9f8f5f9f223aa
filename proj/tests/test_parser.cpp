#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubind/subst.hpp"
#include "support.hpp"

using namespace cubind;
using cubind::test::parse;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> shipped() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(CUBIND_SOURCE_DIR "/stdlib"))
        if (e.path().extension() == ".cit") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

bool same_decl(const Decl& a, const Decl& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    auto eq = [](const Term& x, const Term& y) { return (!x && !y) || (x && y && alpha_equal(x, y)); };
    if (a.kind == Decl::Kind::Data)
        return alpha_equal(a.data.delta, b.data.delta) && alpha_equal(a.data.schema, b.data.schema);
    return eq(a.term, b.term) && eq(a.type, b.type) && a.dims.size() == b.dims.size() && a.expect == b.expect;
}

}  // namespace

TEST(Parser, CircleDeclaration) {
    Env env;
    SourceFile f = parse_file("data circle = base | lp(x) [x=0 -> base | x=1 -> base]\neval lp(0)\n", env);
    ASSERT_EQ(f.decls.size(), 2u);
    const Decl& d = f.decls[0];
    EXPECT_EQ(d.kind, Decl::Kind::Data);
    ASSERT_EQ(d.data.schema->entries.size(), 2u);
    EXPECT_EQ(d.data.schema->entries[1].label, "lp");
    EXPECT_EQ(d.data.schema->entries[1].c.boundary.size(), 2u);
    EXPECT_EQ(f.decls[1].kind, Decl::Kind::Eval);
    EXPECT_EQ(print(f.decls[1].term), "lp(0)");
}

TEST(Parser, ErrorPositions) {
    Env env;
    try {
        parse_file("data nat = zero\neval suc(zero\n", env);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.pos.line, 2);
    }
    EXPECT_THROW(parse("fun => x"), ParseError);
    EXPECT_THROW(parse("nosuchname"), ParseError);
}

TEST(Parser, CommentsAndPrimes) {
    Env env;
    SourceFile f = parse_file("-- a comment\ndata a' = b' -- trailing\n", env);
    ASSERT_EQ(f.decls.size(), 1u);
    EXPECT_EQ(f.decls[0].name, "a'");
}

TEST(Parser, PrintParseOnTerms) {
    const char* terms[] = {
        "fun n => suc(n)",
        "hcom {nat} 0 ~> 1 zero [1=1 -> y. zero]",
        "coe {z. nat} 0 ~> 1 zero",
        "fhcom 0 ~> 1 base [1=1 -> y. lp(y)]",
        "elim [h. nat] base { base -> zero | lp(x) -> zero }",
        "nat -> nat",
    };
    for (const char* s : terms) {
        Term t = parse(s);
        EXPECT_EQ(print(t), s);
        EXPECT_TRUE(alpha_equal(parse(print(t)), t));
    }
}

TEST(RoundTrip, ShippedFilesPrintIdentically) {
    auto files = shipped();
    ASSERT_GE(files.size(), 16u);
    for (const auto& p : files) {
        std::string text = slurp(p);
        Env env;
        SourceFile f = parse_file(text, env);
        EXPECT_EQ(print_file(f), text) << p;
    }
}

TEST(RoundTrip, ParsePrintParseIsParse) {
    for (const auto& p : shipped()) {
        Env e1, e2;
        SourceFile a = parse_file(slurp(p), e1);
        SourceFile b = parse_file(print_file(a), e2);
        ASSERT_EQ(a.decls.size(), b.decls.size()) << p;
        for (size_t i = 0; i < a.decls.size(); ++i) EXPECT_TRUE(same_decl(a.decls[i], b.decls[i])) << p << " decl " << i;
    }
}

TEST(RoundTrip, ShippedFilesMatchTheCatalog) {
    for (const auto& d : catalog()) {
        std::string path = std::string(CUBIND_SOURCE_DIR) + "/stdlib/" + d.name + ".cit";
        EXPECT_EQ(slurp(path), print_file(stdlib_file(d))) << path;
    }
}
