// Acceptance criteria 1-10. One line per criterion; exit status is nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>

#include "cubind/constraints.hpp"
#include "cubind/printer.hpp"
#include "cubind/suites.hpp"

using namespace cubind;

namespace {

// Tolerances.
constexpr uint64_t kStepBudget = 100000;  // per canonicity term
constexpr size_t kCanonicityTerms = 200;
constexpr size_t kKanTerms = 50;
constexpr size_t kCoherenceTerms = 50;
constexpr size_t kMinMutations = 20;
constexpr double kRuntimeSeconds = 60.0;

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

void fold(Outcome& out, const SuiteResult& r) {
    if (!r.ok()) out.fail(r.failures.empty() ? r.name + " ran no cases" : r.failures.front());
}

// Unary oracle: tally marks, then read the tally back as a suc tree.
std::string unary(size_t marks) {
    std::string s = "zero";
    for (size_t i = 0; i < marks; ++i) s = "suc(" + s + ")";
    return s;
}
size_t unary_add(size_t a, size_t b) {
    std::string tally(a, '|');
    tally.append(b, '|');
    return tally.size();
}
size_t unary_mul(size_t a, size_t b) {
    std::string tally;
    for (size_t i = 0; i < a; ++i) tally.append(b, '|');
    return tally.size();
}

std::string observed(const Term& t, const Term& type, const EvalOptions& o = {}) {
    try {
        return observe(t, type, o, kStepBudget).str();
    } catch (const std::exception& e) {
        return std::string("error: ") + e.what();
    }
}

Outcome criterion1() {
    Outcome out;
    SuiteOptions o;
    o.fuel = kStepBudget;
    SuiteResult r = suite_canonicity(o);
    fold(out, r);
    if (r.cases != kCanonicityTerms) out.fail("expected " + std::to_string(kCanonicityTerms) + " terms");
    // Independent check on the same corpus: values are boundaryless constructors within budget.
    for (const auto& [t, type] : canonicity_corpus(kCanonicityTerms, o.seed)) {
        try {
            uint64_t steps = 0;
            Term v = eval(t, kStepBudget, {}, &steps);
            const auto* in = v->as<tm::Intro>();
            if (!in || !in->schema->find(in->label)->boundary.empty()) out.fail("non-canonical value " + print(v));
            if (steps > kStepBudget) out.fail("step budget exceeded");
        } catch (const std::exception& e) {
            out.fail(e.what());
        }
    }
    out.detail = out.pass ? std::to_string(r.cases) + " terms canonical" : out.detail;
    return out;
}

Outcome criterion2() {
    Outcome out;
    size_t n = 0;
    for (size_t a = 0; a <= 5; ++a)
        for (size_t b = 0; b <= 5; ++b) {
            std::string add = observed(nat_add(numeral(a), numeral(b)), nat_type());
            std::string mul = observed(nat_mul(numeral(a), numeral(b)), nat_type());
            if (add != unary(unary_add(a, b))) out.fail("add " + std::to_string(a) + " " + std::to_string(b) + " = " + add);
            if (mul != unary(unary_mul(a, b))) out.fail("mul " + std::to_string(a) + " " + std::to_string(b) + " = " + mul);
            n += 2;
        }
    if (n != 72) out.fail("expected 36 cases each");
    if (out.pass) out.detail = "36 add + 36 mul cases match the unary oracle";
    return out;
}

Outcome criterion3() {
    Outcome out;
    // Faces per constructor that the catalog must carry.
    const std::map<std::string, size_t> want = {
        {"circle/lp", 2},        {"torus/lpa", 2},       {"torus/lpb", 2},       {"torus/surf", 4},
        {"torus_glob/lpa", 2},   {"torus_glob/lpb", 2},  {"torus_glob/surf", 4}, {"trunc_bool/trglue", 2},
        {"WQ_bool/wqcell", 2},   {"hub_circle/spoke", 2}, {"hub_s2/spoke", 2},    {"loc_bool/rtr", 2},
        {"loc_bool/rtr'", 2},    {"s2/surf", 4},
    };
    size_t total = 0;
    for (const auto& d : catalog())
        for (const auto& e : d.schema->entries) {
            if (e.c.boundary.empty()) continue;
            std::string key = d.name + "/" + e.label;
            auto it = want.find(key);
            if (it == want.end())
                out.fail("unexpected boundary on " + key);
            else if (it->second != e.c.boundary.size())
                out.fail(key + " has " + std::to_string(e.c.boundary.size()) + " faces");
            total += e.c.boundary.size();
        }
    SuiteResult r = suite_boundary({});
    fold(out, r);
    if (r.cases != total) out.fail("suite covered " + std::to_string(r.cases) + " of " + std::to_string(total) + " faces");
    if (out.pass) out.detail = std::to_string(total) + " faces adhere";
    return out;
}

Outcome criterion4() {
    Outcome out;
    SuiteResult r = suite_kan({});
    fold(out, r);
    if (r.cases != kKanTerms) out.fail("expected " + std::to_string(kKanTerms) + " terms");
    // Direct spot checks: r = r' composition and coercion return the cap.
    Name x = fresh_name("x"), y = fresh_name("y"), z = fresh_name("z");
    Term lp = mk::intro(decl("circle").schema, "lp", {Dim::of(x)}, {}, {});
    Term h = mk::hcom(decl("circle").type(), Dim::of(x), Dim::of(x), lp,
                      {Face{{Dim::of(x), Dim::zero()}, y, lp}, Face{{Dim::of(x), Dim::one()}, y, lp}});
    if (!alpha_equal(eval(h), lp)) out.fail("hcom x~>x does not evaluate to its cap");
    Term c = mk::coe(z, nat_type(), Dim::one(), Dim::one(), numeral(3));
    if (observed(c, nat_type()) != unary(3)) out.fail("coe 1~>1 changed its body");
    if (out.pass) out.detail = std::to_string(r.cases) + " degenerate Kan terms agree with their caps";
    return out;
}

// Beta rule right-hand side for elim over an intro, assembled directly.
Term beta_rhs(const tm::Elim& e, const tm::Intro& in) {
    const Constructor& c = *in.schema->find(in.label);
    const ElimCase* ec = nullptr;
    for (const auto& k : e.cases)
        if (k.label == in.label) ec = &k;
    if (!ec) return nullptr;
    Subst theta, body;
    for (size_t i = 0; i < c.dims.size(); ++i) {
        theta.add_dim(c.dims[i], in.dims[i]);
        body.add_dim(ec->dims[i], in.dims[i]);
    }
    for (size_t i = 0; i < c.params.size(); ++i) {
        theta.add_term(c.params[i].first, in.params[i]);
        body.add_term(ec->params[i], in.params[i]);
    }
    std::function<Term(const ArgType&, const Term&)> result = [&](const ArgType& b, const Term& n) -> Term {
        if (const auto* s = b->as<at::SelfAt>()) return mk::elim(e.deltas, e.h, e.motive, s->indices, n, e.cases);
        const auto* p = b->as<at::Pi>();
        Name a = fresh_name("a");
        return mk::lam(a, result(substitute(p->cod, [&] {
                                     Subst s;
                                     s.add_term(p->b, mk::var(a));
                                     return s;
                                 }()),
                                 mk::app(n, mk::var(a))));
    };
    for (size_t j = 0; j < c.args.size(); ++j) {
        body.add_term(ec->recs[j], in.args[j]);
        body.add_term(ec->results[j], result(substitute(c.args[j].second, theta), in.args[j]));
    }
    return substitute(ec->body, body);
}

Outcome criterion5() {
    Outcome out;
    SuiteResult r = suite_beta({});
    fold(out, r);
    size_t checked = 0;
    for (const auto& d : catalog()) {
        for (const auto& e : d.schema->entries) {
            // Constructors with a boundary sit at a free dimension so the intro does not reduce.
            std::vector<Dim> dims(e.c.dims.size(), Dim::zero());
            if (!e.c.boundary.empty()) {
                Name x = fresh_name("x");
                std::fill(dims.begin(), dims.end(), Dim::of(x));
            }
            Subst s;
            for (size_t i = 0; i < e.c.dims.size(); ++i) s.add_dim(e.c.dims[i], dims[i]);
            std::vector<Term> ps, as;
            bool ok = true;
            for (const auto& [p, a] : e.c.params) {
                Term v = sample_value(substitute(a, s));
                if (!v) ok = false;
                if (!ok) break;
                ps.push_back(v);
                s.add_term(p, v);
            }
            for (size_t j = 0; ok && j < e.c.args.size(); ++j) {
                Term v = sample_value(tyatty(substitute(e.c.args[j].second, s), Family{{}, d.type(substitute(e.c.indices, s))}));
                if (!v) ok = false;
                as.push_back(v);
            }
            if (!ok) continue;
            Term in = mk::intro(d.schema, e.label, dims, ps, as);
            std::vector<Term> idx = substitute(e.c.indices, s);
            Term el = derive_eliminator(d, idx, in);
            StepResult st = step(el);
            Term want = beta_rhs(std::get<tm::Elim>(el->v), std::get<tm::Intro>(in->v));
            ++checked;
            if (st.kind != StepResult::Kind::Steps || !alpha_equal(st.next, want))
                out.fail(d.name + " " + e.label + ": first step differs from the beta right-hand side");
        }
    }
    // J on refl: R[M/a] with R = suc(a).
    for (unsigned m = 0; m <= 4; ++m) {
        Name a = fresh_name("a");
        Term refl = mk::intro(decl("Id_nat").schema, "refl", {}, {numeral(m)}, {});
        Term j = id_elim_nat(numeral(m), numeral(m), refl, a, mk::intro(decl("nat").schema, "suc", {}, {}, {mk::var(a)}));
        if (observed(j, nat_type()) != unary(m + 1)) out.fail("J refl " + std::to_string(m));
    }
    if (checked < 30) out.fail("only " + std::to_string(checked) + " constructor forms checked");
    if (out.pass) out.detail = std::to_string(checked) + " eliminator/constructor pairs, J on refl";
    return out;
}

Outcome criterion6() {
    Outcome out;
    SuiteResult r = suite_coherence({});
    fold(out, r);
    if (r.cases != kCoherenceTerms) out.fail("expected " + std::to_string(kCoherenceTerms) + " terms");
    // Independent instance: circle_to_nat(lp x) at both endpoints, both orders.
    Name x = fresh_name("x");
    Term m = circle_to_nat(mk::intro(decl("circle").schema, "lp", {Dim::of(x)}, {}, {}), 2);
    Term v = eval(m);
    for (int e = 0; e < 2; ++e) {
        DimSubst psi = DimSubst::single(x, Dim::constant(e));
        if (observed(dim_subst(m, psi), nat_type()) != unary(2) || observed(dim_subst(v, psi), nat_type()) != unary(2))
            out.fail("circle_to_nat(lp x) endpoint " + std::to_string(e));
    }
    if (out.pass) out.detail = std::to_string(r.cases) + " terms agree in both orders";
    return out;
}

Outcome criterion7() {
    Outcome out;
    SuiteResult r = suite_mutation({});
    fold(out, r);
    size_t mutations = mutation_corpus().size();
    if (mutations < kMinMutations) out.fail("only " + std::to_string(mutations) + " mutations");
    if (out.pass)
        out.detail = std::to_string(mutations) + " mutations rejected with the expected kind, " +
                     std::to_string(catalog().size()) + " stdlib files accepted";
    return out;
}

Outcome criterion8() {
    Outcome out;
    SuiteResult r = suite_validity({});
    fold(out, r);
    // 1 + 25 + 25^2 + 25^3 + 25^4 contexts over {0, 1, x, y, z}.
    if (r.cases != 406901) out.fail("enumerated " + std::to_string(r.cases) + " contexts");
    if (out.pass) out.detail = std::to_string(r.cases) + " contexts sound; " + r.notes.front();
    return out;
}

Outcome criterion9() {
    Outcome out;
    SuiteResult r = suite_optimization({});
    fold(out, r);
    if (r.cases != 6) out.fail("expected suites 1-6");
    // Coercion at a closed type is a single step with the flag.
    EvalOptions opt;
    opt.opt_closed = true;
    Term c = mk::coe(fresh_name("z"), nat_type(), Dim::zero(), Dim::one(), numeral(2));
    StepResult st = step(c, opt);
    if (st.kind != StepResult::Kind::Steps || !alpha_equal(st.next, numeral(2))) out.fail("coe at nat is not trivial");
    if (out.pass) out.detail = "suites 1-6 observe identically with closed-type optimizations";
    return out;
}

Outcome criterion10() {
    Outcome out;
    SuiteResult r = suite_natrec({});
    fold(out, r);
    if (out.pass) out.detail = "natrec boundary checks with the extension; golden trace matches";
    return out;
}

}  // namespace

int main() {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::function<Outcome()>> cs = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                criterion6, criterion7, criterion8, criterion9, criterion10};
    bool all = true;
    for (size_t i = 0; i < cs.size(); ++i) {
        Outcome o;
        try {
            o = cs[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool fast = secs < kRuntimeSeconds;
    std::cout << "runtime: " << (fast ? "PASS" : "FAIL") << " - " << secs << " s (limit " << kRuntimeSeconds << " s)\n";
    return all && fast ? 0 : 1;
}
