#include "cubind/checker.hpp"

#include <algorithm>
#include <mutex>

#include "cubind/constraints.hpp"
#include "cubind/evaluator.hpp"
#include "cubind/printer.hpp"

namespace cubind {

CheckError::CheckError(Kind k, std::string loc, std::string rule_name, std::string msg)
    : std::runtime_error((loc.empty() ? std::string() : loc + ": ") + msg + " [" + rule_name + "]"),
      kind(k),
      location(std::move(loc)),
      rule(std::move(rule_name)),
      message(std::move(msg)) {}

const char* kind_name(CheckError::Kind k) {
    switch (k) {
        case CheckError::Kind::Scope: return "Scope";
        case CheckError::Kind::Arity: return "Arity";
        case CheckError::Kind::Validity: return "Validity";
        case CheckError::Kind::LabelOrder: return "LabelOrder";
        case CheckError::Kind::Conversion: return "Conversion";
        case CheckError::Kind::Unsupported: return "Unsupported";
    }
    return "?";
}

CheckCtx CheckCtx::with_dim(const Name& x) const {
    CheckCtx c = *this;
    c.dims.push_back(x);
    return c;
}

CheckCtx CheckCtx::with_var(const Name& x, const Term& type) const {
    CheckCtx c = *this;
    c.vars.emplace_back(x, type);
    return c;
}

const Term* CheckCtx::lookup(const Name& x) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        if (it->first == x) return &it->second;
    return nullptr;
}

bool CheckCtx::has_dim(const Name& x) const { return std::find(dims.begin(), dims.end(), x) != dims.end(); }

namespace {

using Kind = CheckError::Kind;

// Schemas already accepted, keyed by identity. Holding the pointer keeps the
// key alive.
struct SchemaCache {
    std::mutex mu;
    std::vector<std::tuple<Schema, Telescope, bool>> done;

    bool has(const Schema& k, const Telescope& delta, bool natrec) {
        std::lock_guard<std::mutex> lock(mu);
        for (const auto& [s, d, n] : done)
            if (s == k && n == natrec && alpha_equal(d, delta)) return true;
        return false;
    }
    void add(const Schema& k, const Telescope& delta, bool natrec) {
        std::lock_guard<std::mutex> lock(mu);
        done.emplace_back(k, delta, natrec);
    }
};

SchemaCache& schema_cache() {
    static SchemaCache c;
    return c;
}

bool closed_telescope(const Telescope& tel) { return fv::of_telescope(tel).closed(); }

CheckCtx restrict(const CheckCtx& ctx, const DimSubst& psi) {
    if (psi.empty()) return ctx;
    CheckCtx c;
    c.dims = ctx.dims;
    for (const auto& [x, a] : ctx.vars) c.vars.emplace_back(x, dim_subst(a, psi));
    return c;
}

ArgType dim_subst_arg(const ArgType& a, const DimSubst& psi) {
    if (psi.empty()) return a;
    Subst s;
    s.add_dims(psi);
    return substitute(a, s);
}

ArgCtx dim_subst_args(const ArgCtx& theta, const DimSubst& psi) {
    ArgCtx out;
    for (const auto& [p, a] : theta) out.emplace_back(p, dim_subst_arg(a, psi));
    return out;
}

std::vector<Term> vars_of(const std::vector<Name>& xs) {
    std::vector<Term> out;
    for (const auto& x : xs) out.push_back(mk::var(x));
    return out;
}

std::vector<Name> fresh_like(const Telescope& tel) {
    std::vector<Name> out;
    for (const auto& e : tel) out.push_back(fresh_name(e.first));
    return out;
}

// δ.Ind(Δ, K, δ)
Family self_family(const Telescope& delta, const Schema& k) {
    Family f;
    f.deltas = fresh_like(delta);
    f.body = mk::ind(delta, k, vars_of(f.deltas));
    return f;
}

bool nat_shaped(const Term& t) {
    const auto* ind = t->as<tm::Ind>();
    if (!ind || !ind->delta.empty() || !ind->indices.empty()) return false;
    const auto& es = ind->schema->entries;
    if (es.size() != 2 || es[0].label != "zero" || es[1].label != "suc") return false;
    const Constructor& z = es[0].c;
    const Constructor& s = es[1].c;
    if (!z.dims.empty() || !z.params.empty() || !z.args.empty() || !z.boundary.empty()) return false;
    if (!s.dims.empty() || !s.params.empty() || s.args.size() != 1 || !s.boundary.empty()) return false;
    const auto* self = s.args[0].second->as<at::SelfAt>();
    return self && self->indices.empty();
}

struct BCtx {
    CheckCtx ctx;
    Telescope delta;
    Schema prefix;
    std::vector<std::string> later;  // labels at or after the constructor being checked
    ArgCtx theta;
};

class Checker {
public:
    explicit Checker(const CheckOptions& opts) : opts_(opts) {}

    std::vector<std::string> path;

    struct At {
        Checker& c;
        At(Checker& ch, std::string s) : c(ch) { c.path.push_back(std::move(s)); }
        ~At() { c.path.pop_back(); }
    };

    [[noreturn]] void fail(Kind k, const std::string& rule, const std::string& msg) {
        std::string loc;
        for (size_t i = 0; i < path.size(); ++i) loc += (i ? "/" : "") + path[i];
        throw CheckError(k, loc, rule, msg);
    }

    // ---- scope -------------------------------------------------------------

    void dim(const CheckCtx& ctx, const Dim& r) {
        if (r.is_var() && !ctx.has_dim(r.var)) fail(Kind::Scope, "dim", "unbound dimension " + print(r));
    }
    void constraint(const CheckCtx& ctx, const Constraint& c) {
        dim(ctx, c.lhs);
        dim(ctx, c.rhs);
    }

    // ---- conversion --------------------------------------------------------

    Term whnf(const CheckCtx& ctx, Term t) {
        EvalOptions eo;
        for (uint64_t n = 0; n < opts_.conv_fuel; ++n) {
            StepResult r = step(t, eo);
            if (r.kind == StepResult::Kind::Steps) {
                t = std::move(r.next);
                continue;
            }
            if (r.kind == StepResult::Kind::Stuck) {
                if (Term e = endpoint(ctx, t)) {
                    t = e;
                    continue;
                }
            }
            return t;
        }
        return t;
    }

    // A neutral path applied at a constant steps to the endpoint of its type.
    Term endpoint(const CheckCtx& ctx, const Term& t) {
        const auto* pa = t->as<tm::PApp>();
        if (!pa || !pa->r.is_const()) return nullptr;
        try {
            std::vector<std::string> saved = path;
            Term ty = whnf(ctx, infer(ctx, pa->path));
            path = saved;
            const auto* p = ty->as<tm::PathTy>();
            if (!p) return nullptr;
            return pa->r.kind == Dim::Kind::Zero ? p->left : p->right;
        } catch (const CheckError&) {
            return nullptr;
        }
    }

    bool conv(const CheckCtx& ctx, const Term& a, const Term& b) {
        if (a == b || alpha_equal(a, b)) return true;
        Term x = whnf(ctx, a), y = whnf(ctx, b);
        if (alpha_equal(x, y)) return true;
        return conv_whnf(ctx, x, y);
    }

    bool conv_all(const CheckCtx& ctx, const std::vector<Term>& as, const std::vector<Term>& bs) {
        if (as.size() != bs.size()) return false;
        for (size_t i = 0; i < as.size(); ++i)
            if (!conv(ctx, as[i], bs[i])) return false;
        return true;
    }

    bool conv_tube(const CheckCtx& ctx, const Tube& ta, const Tube& tb) {
        if (ta.size() != tb.size()) return false;
        for (size_t i = 0; i < ta.size(); ++i) {
            Constraint ca = normalize(ta[i].xi), cb = normalize(tb[i].xi);
            if (ca.lhs != cb.lhs || ca.rhs != cb.rhs) return false;
            auto psi = constraint_mgu(ca);
            if (!psi) continue;
            Name y = fresh_name(ta[i].y);
            Term ba = dim_subst(dsubst1(ta[i].body, ta[i].y, Dim::of(y)), *psi);
            Term bb = dim_subst(dsubst1(tb[i].body, tb[i].y, Dim::of(y)), *psi);
            if (!conv(restrict(ctx, *psi).with_dim(y), ba, bb)) return false;
        }
        return true;
    }

    bool conv_whnf(const CheckCtx& ctx, const Term& x, const Term& y) {
        if (x->is<tm::Lam>() || y->is<tm::Lam>()) {
            Name v = fresh_name(x->is<tm::Lam>() ? x->as<tm::Lam>()->x : y->as<tm::Lam>()->x);
            return conv(ctx, mk::app(x, mk::var(v)), mk::app(y, mk::var(v)));
        }
        if (x->is<tm::PLam>() || y->is<tm::PLam>()) {
            Name v = fresh_name(x->is<tm::PLam>() ? x->as<tm::PLam>()->x : y->as<tm::PLam>()->x);
            return conv(ctx.with_dim(v), mk::papp(x, Dim::of(v)), mk::papp(y, Dim::of(v)));
        }
        if (x->v.index() != y->v.index()) return false;
        if (const auto* a = x->as<tm::Var>()) return a->x == y->as<tm::Var>()->x;
        if (const auto* a = x->as<tm::Intro>()) {
            const auto* b = y->as<tm::Intro>();
            return a->label == b->label && a->dims == b->dims && conv_all(ctx, a->params, b->params) &&
                   conv_all(ctx, a->args, b->args);
        }
        if (const auto* a = x->as<tm::Fhcom>()) {
            const auto* b = y->as<tm::Fhcom>();
            return a->r == b->r && a->s == b->s && conv(ctx, a->cap, b->cap) && conv_tube(ctx, a->tube, b->tube);
        }
        if (const auto* a = x->as<tm::Fcoe>()) {
            const auto* b = y->as<tm::Fcoe>();
            if (a->r != b->r || a->s != b->s || a->line.size() != b->line.size()) return false;
            Name z = fresh_name(a->z);
            for (size_t i = 0; i < a->line.size(); ++i)
                if (!conv(ctx.with_dim(z), dsubst1(a->line[i], a->z, Dim::of(z)),
                          dsubst1(b->line[i], b->z, Dim::of(z))))
                    return false;
            return conv(ctx, a->body, b->body);
        }
        if (const auto* a = x->as<tm::Pi>()) {
            const auto* b = y->as<tm::Pi>();
            if (!conv(ctx, a->dom, b->dom)) return false;
            Name v = fresh_name(a->x);
            return conv(ctx.with_var(v, a->dom), subst1(a->cod, a->x, mk::var(v)), subst1(b->cod, b->x, mk::var(v)));
        }
        if (const auto* a = x->as<tm::Ind>()) {
            const auto* b = y->as<tm::Ind>();
            return alpha_equal(a->schema, b->schema) && conv_all(ctx, a->indices, b->indices);
        }
        if (const auto* a = x->as<tm::PathTy>()) {
            const auto* b = y->as<tm::PathTy>();
            Name v = fresh_name(a->x);
            return conv(ctx.with_dim(v), dsubst1(a->type, a->x, Dim::of(v)), dsubst1(b->type, b->x, Dim::of(v))) &&
                   conv(ctx, a->left, b->left) && conv(ctx, a->right, b->right);
        }
        if (const auto* a = x->as<tm::App>()) {
            const auto* b = y->as<tm::App>();
            return conv(ctx, a->fn, b->fn) && conv(ctx, a->arg, b->arg);
        }
        if (const auto* a = x->as<tm::PApp>()) {
            const auto* b = y->as<tm::PApp>();
            return a->r == b->r && conv(ctx, a->path, b->path);
        }
        if (const auto* a = x->as<tm::Elim>()) {
            const auto* b = y->as<tm::Elim>();
            if (!conv(ctx, a->scrut, b->scrut) || !conv_all(ctx, a->indices, b->indices)) return false;
            Term a2 = mk::elim(a->deltas, a->h, a->motive, b->indices, b->scrut, a->cases);
            return alpha_equal(a2, y);
        }
        if (const auto* a = x->as<tm::NatRec>()) {
            const auto* b = y->as<tm::NatRec>();
            if (!conv(ctx, a->scrut, b->scrut)) return false;
            return alpha_equal(mk::natrec(b->scrut, a->zero, a->a, a->r, a->suc), y);
        }
        if (const auto* a = x->as<tm::Tcoe>()) {
            const auto* b = y->as<tm::Tcoe>();
            if (!conv(ctx, a->body, b->body)) return false;
            return alpha_equal(mk::tcoe(a->z, a->delta, a->schema, a->r, a->s, b->body), y);
        }
        return false;
    }

    // ---- terms -------------------------------------------------------------

    CheckCtx telescope(const CheckCtx& ctx, const Telescope& tel) {
        CheckCtx c = ctx;
        for (size_t i = 0; i < tel.size(); ++i) {
            At at(*this, "telescope[" + std::to_string(i) + "]");
            type(c, tel[i].second);
            c = c.with_var(tel[i].first, tel[i].second);
        }
        return c;
    }

    void args(const CheckCtx& ctx, const std::vector<Term>& ts, const Telescope& tel, const std::string& what) {
        if (ts.size() != tel.size())
            fail(Kind::Arity, what, "expected " + std::to_string(tel.size()) + " terms, got " + std::to_string(ts.size()));
        Subst s;
        for (size_t i = 0; i < ts.size(); ++i) {
            check(ctx, ts[i], substitute(tel[i].second, s));
            s.add_term(tel[i].first, ts[i]);
        }
    }

    void same_indices(const CheckCtx& ctx, const std::vector<Term>& got, const std::vector<Term>& want,
                      const std::string& rule) {
        if (got.size() != want.size()) fail(Kind::Arity, rule, "index count mismatch");
        for (size_t i = 0; i < got.size(); ++i)
            if (!conv(ctx, got[i], want[i]))
                fail(Kind::Conversion, rule, "index " + print(got[i]) + " is not " + print(want[i]));
    }

    void type(const CheckCtx& ctx, const Term& a) {
        Term w = whnf(ctx, a);
        if (const auto* p = w->as<tm::Pi>()) {
            type(ctx, p->dom);
            type(ctx.with_var(p->x, p->dom), p->cod);
            return;
        }
        if (const auto* ind = w->as<tm::Ind>()) {
            CheckCtx cd = telescope(ctx, ind->delta);
            (void)cd;
            constrs(ctx, ind->delta, ind->schema);
            args(ctx, ind->indices, ind->delta, "ind-formation");
            return;
        }
        if (const auto* p = w->as<tm::PathTy>()) {
            if (!opts_.ext_paths) fail(Kind::Unsupported, "path-formation", "path types need --ext paths");
            type(ctx.with_dim(p->x), p->type);
            check(ctx, p->left, dsubst1(p->type, p->x, Dim::zero()));
            check(ctx, p->right, dsubst1(p->type, p->x, Dim::one()));
            return;
        }
        fail(Kind::Unsupported, "type", "not a type former: " + print(a));
    }

    void check(const CheckCtx& ctx, const Term& t, const Term& expected) {
        if (const auto* n = t->as<tm::Lam>()) {
            Term w = whnf(ctx, expected);
            const auto* pi = w->as<tm::Pi>();
            if (!pi) fail(Kind::Conversion, "lam", "function checked against " + print(expected));
            check(ctx.with_var(n->x, pi->dom), n->body, subst1(pi->cod, pi->x, mk::var(n->x)));
            return;
        }
        if (const auto* n = t->as<tm::PLam>()) {
            if (!opts_.ext_paths) fail(Kind::Unsupported, "path-intro", "paths need --ext paths");
            Term w = whnf(ctx, expected);
            const auto* p = w->as<tm::PathTy>();
            if (!p) fail(Kind::Conversion, "path-intro", "path abstraction checked against " + print(expected));
            check(ctx.with_dim(n->x), n->body, dsubst1(p->type, p->x, Dim::of(n->x)));
            if (!conv(ctx, dsubst1(n->body, n->x, Dim::zero()), p->left))
                fail(Kind::Conversion, "path-intro", "left endpoint mismatch");
            if (!conv(ctx, dsubst1(n->body, n->x, Dim::one()), p->right))
                fail(Kind::Conversion, "path-intro", "right endpoint mismatch");
            return;
        }
        if (t->is<tm::Intro>() || t->is<tm::Fhcom>() || t->is<tm::Fcoe>() || t->is<tm::Fcom>()) {
            Term w = whnf(ctx, expected);
            const auto* ind = w->as<tm::Ind>();
            if (!ind) fail(Kind::Conversion, "intro", "inductive former checked against " + print(expected));
            if (const auto* n = t->as<tm::Intro>()) return intro(ctx, *n, *ind);
            if (const auto* n = t->as<tm::Fhcom>()) {
                check(ctx, n->cap, w);
                tube(ctx, n->r, n->cap, n->tube, [&](const Dim&) { return w; }, "fhcom");
                dim(ctx, n->s);
                return;
            }
            if (const auto* n = t->as<tm::Fcoe>()) {
                line(ctx, n->z, n->line, ind->delta);
                dim(ctx, n->r);
                dim(ctx, n->s);
                same_indices(ctx, dim_subst(n->line, DimSubst::single(n->z, n->s)), ind->indices, "fcoe");
                check(ctx, n->body, mk::ind(ind->delta, ind->schema, dim_subst(n->line, DimSubst::single(n->z, n->r))));
                return;
            }
            const auto& n = std::get<tm::Fcom>(t->v);
            line(ctx, n.z, n.line, ind->delta);
            dim(ctx, n.s);
            same_indices(ctx, dim_subst(n.line, DimSubst::single(n.z, n.s)), ind->indices, "fcom");
            auto at = [&](const Dim& d) {
                return mk::ind(ind->delta, ind->schema, dim_subst(n.line, DimSubst::single(n.z, d)));
            };
            check(ctx, n.cap, at(n.r));
            tube(ctx, n.r, n.cap, n.tube, at, "fcom");
            return;
        }
        Term got = infer(ctx, t);
        if (!conv(ctx, got, expected))
            fail(Kind::Conversion, "conv", "expected " + print(expected) + ", got " + print(got));
    }

    void line(const CheckCtx& ctx, const Name& z, const std::vector<Term>& js, const Telescope& delta) {
        args(ctx.with_dim(z), js, delta, "index-line");
    }

    // Cap agreement, face typing and pairwise face agreement for a tube.
    template <class TypeAt>
    void tube(const CheckCtx& ctx, const Dim& r, const Term& cap, const Tube& faces, TypeAt type_at,
              const std::string& rule) {
        dim(ctx, r);
        ConstraintCtx xis;
        for (const auto& f : faces) {
            constraint(ctx, f.xi);
            xis.push_back(f.xi);
        }
        if (!ctx_valid(xis)) fail(Kind::Validity, rule, "tube constraints are not valid");
        std::vector<Name> ys;
        std::vector<Term> bodies;
        for (const auto& f : faces) {
            ys.push_back(fresh_name(f.y));
            bodies.push_back(dsubst1(f.body, f.y, Dim::of(ys.back())));
        }
        Name y = fresh_name("y");
        for (size_t i = 0; i < faces.size(); ++i) {
            At at(*this, rule + " face " + print(faces[i].xi));
            auto psi = constraint_mgu(faces[i].xi);
            if (!psi) continue;
            CheckCtx ci = restrict(ctx, *psi).with_dim(ys[i]);
            Term body = dim_subst(bodies[i], *psi);
            check(ci, body, dim_subst(type_at(Dim::of(ys[i])), *psi));
            Term at_r = dim_subst(dsubst1(bodies[i], ys[i], r), *psi);
            if (!conv(restrict(ctx, *psi), at_r, dim_subst(cap, *psi)))
                fail(Kind::Conversion, rule + "-cap", "face disagrees with the cap");
            for (size_t j = i + 1; j < faces.size(); ++j) {
                auto both = constraints_mgu({faces[i].xi, faces[j].xi});
                if (!both) continue;
                Term bi = dim_subst(dsubst1(bodies[i], ys[i], Dim::of(y)), *both);
                Term bj = dim_subst(dsubst1(bodies[j], ys[j], Dim::of(y)), *both);
                if (!conv(restrict(ctx, *both).with_dim(y), bi, bj))
                    fail(Kind::Conversion, rule + "-adj", "faces " + print(faces[i].xi) + " and " +
                                                            print(faces[j].xi) + " disagree");
            }
        }
    }

    void intro(const CheckCtx& ctx, const tm::Intro& n, const tm::Ind& ind) {
        At at(*this, "intro " + n.label);
        if (!alpha_equal(n.schema, ind.schema))
            fail(Kind::Conversion, "intro", "constructor annotation differs from the type's schema");
        std::vector<Term> idx = intro_args(ctx, n, ind.delta, ind.schema);
        same_indices(ctx, idx, ind.indices, "intro");
    }

    // Checks dims, params and arguments; returns the landing indices.
    std::vector<Term> intro_args(const CheckCtx& ctx, const tm::Intro& n, const Telescope& delta, const Schema& k) {
        const Constructor* c = k->find(n.label);
        if (!c) fail(Kind::Scope, "intro", "unknown constructor " + n.label);
        if (c->dims.size() != n.dims.size()) fail(Kind::Arity, "intro", "wrong number of dimensions");
        for (const auto& r : n.dims) dim(ctx, r);
        Subst s;
        for (size_t i = 0; i < c->dims.size(); ++i) s.add_dim(c->dims[i], n.dims[i]);
        args(ctx, n.params, substitute(c->params, s), "intro-params");
        for (size_t i = 0; i < c->params.size(); ++i) s.add_term(c->params[i].first, n.params[i]);
        if (c->args.size() != n.args.size()) fail(Kind::Arity, "intro", "wrong number of recursive arguments");
        Family fam = self_family(delta, k);
        for (size_t j = 0; j < n.args.size(); ++j)
            check(ctx, n.args[j], tyatty(substitute(c->args[j].second, s), fam));
        return substitute(c->indices, s);
    }

    Term infer(const CheckCtx& ctx, const Term& t) {
        if (const auto* n = t->as<tm::Var>()) {
            const Term* ty = ctx.lookup(n->x);
            if (!ty) fail(Kind::Scope, "var", "unbound variable " + std::string(n->x.text()));
            return *ty;
        }
        if (const auto* n = t->as<tm::App>()) {
            // An unannotated redex takes its domain from the argument.
            if (Term r = head_beta(ctx, t)) return infer(ctx, r);
            Term f = whnf(ctx, infer(ctx, n->fn));
            const auto* pi = f->as<tm::Pi>();
            if (!pi) fail(Kind::Conversion, "app", "applying a non-function of type " + print(f));
            check(ctx, n->arg, pi->dom);
            return subst1(pi->cod, pi->x, n->arg);
        }
        if (const auto* n = t->as<tm::PApp>()) {
            if (!opts_.ext_paths) fail(Kind::Unsupported, "path-app", "paths need --ext paths");
            dim(ctx, n->r);
            Term p = whnf(ctx, infer(ctx, n->path));
            const auto* pt = p->as<tm::PathTy>();
            if (!pt) fail(Kind::Conversion, "path-app", "applying a non-path of type " + print(p));
            return dsubst1(pt->type, pt->x, n->r);
        }
        if (const auto* n = t->as<tm::Intro>()) {
            At at(*this, "intro " + n->label);
            const Constructor* c = n->schema->find(n->label);
            if (!c) fail(Kind::Scope, "intro", "unknown constructor " + n->label);
            // The index telescope is not recorded on intro; recover it from the
            // types of the landing indices.
            Subst s;
            for (size_t i = 0; i < c->dims.size() && i < n->dims.size(); ++i) s.add_dim(c->dims[i], n->dims[i]);
            for (size_t i = 0; i < c->params.size() && i < n->params.size(); ++i)
                s.add_term(c->params[i].first, n->params[i]);
            Telescope delta;
            if (!c->indices.empty()) {
                if (c->params.size() != n->params.size()) fail(Kind::Arity, "intro", "wrong number of parameters");
                for (const auto& i : substitute(c->indices, s)) delta.emplace_back(fresh_name("d"), infer(ctx, i));
            }
            constrs(ctx, delta, n->schema);
            std::vector<Term> idx = intro_args(ctx, *n, delta, n->schema);
            return mk::ind(delta, n->schema, idx);
        }
        if (const auto* n = t->as<tm::Fhcom>()) {
            Term a = whnf(ctx, infer(ctx, n->cap));
            if (!a->is<tm::Ind>()) fail(Kind::Conversion, "fhcom", "cap is not inductive");
            dim(ctx, n->s);
            tube(ctx, n->r, n->cap, n->tube, [&](const Dim&) { return a; }, "fhcom");
            return a;
        }
        if (const auto* n = t->as<tm::Fcoe>()) {
            Term a = whnf(ctx, infer(ctx, n->body));
            const auto* ind = a->as<tm::Ind>();
            if (!ind) fail(Kind::Conversion, "fcoe", "body is not inductive");
            Term res = mk::ind(ind->delta, ind->schema, dim_subst(n->line, DimSubst::single(n->z, n->s)));
            check(ctx, t, res);
            return res;
        }
        if (const auto* n = t->as<tm::Fcom>()) {
            Term a = whnf(ctx, infer(ctx, n->cap));
            const auto* ind = a->as<tm::Ind>();
            if (!ind) fail(Kind::Conversion, "fcom", "cap is not inductive");
            Term res = mk::ind(ind->delta, ind->schema, dim_subst(n->line, DimSubst::single(n->z, n->s)));
            check(ctx, t, res);
            return res;
        }
        if (const auto* n = t->as<tm::Hcom>()) {
            type(ctx, n->type);
            dim(ctx, n->s);
            check(ctx, n->cap, n->type);
            tube(ctx, n->r, n->cap, n->tube, [&](const Dim&) { return n->type; }, "hcom");
            return n->type;
        }
        if (const auto* n = t->as<tm::Coe>()) {
            type(ctx.with_dim(n->z), n->type);
            dim(ctx, n->r);
            dim(ctx, n->s);
            check(ctx, n->body, dsubst1(n->type, n->z, n->r));
            return dsubst1(n->type, n->z, n->s);
        }
        if (const auto* n = t->as<tm::Com>()) {
            type(ctx.with_dim(n->z), n->type);
            dim(ctx, n->s);
            check(ctx, n->cap, dsubst1(n->type, n->z, n->r));
            tube(ctx, n->r, n->cap, n->tube, [&](const Dim& y) { return dsubst1(n->type, n->z, y); }, "com");
            return dsubst1(n->type, n->z, n->s);
        }
        if (const auto* n = t->as<tm::Tcoe>()) {
            CheckCtx cz = ctx.with_dim(n->z);
            telescope(cz, n->delta);
            constrs(cz, n->delta, n->schema);
            dim(ctx, n->r);
            dim(ctx, n->s);
            Term a = whnf(ctx, infer(ctx, n->body));
            const auto* ind = a->as<tm::Ind>();
            if (!ind) fail(Kind::Conversion, "tcoe", "body is not inductive");
            DimSubst at_r = DimSubst::single(n->z, n->r), at_s = DimSubst::single(n->z, n->s);
            if (!alpha_equal(ind->schema, dim_subst(n->schema, at_r)))
                fail(Kind::Conversion, "tcoe", "body schema differs from the line at r");
            args(ctx, ind->indices, dim_subst(n->delta, at_r), "tcoe-indices");
            return mk::ind(dim_subst(n->delta, at_s), dim_subst(n->schema, at_s),
                           mcoe(n->z, n->delta, n->r, n->s, ind->indices));
        }
        if (const auto* n = t->as<tm::Elim>()) return elim(ctx, *n);
        if (const auto* n = t->as<tm::NatRec>()) {
            if (!opts_.ext_natrec) fail(Kind::Unsupported, "natrec", "natrec needs --ext natrec");
            Term nat = whnf(ctx, infer(ctx, n->scrut));
            if (!nat_shaped(nat)) fail(Kind::Conversion, "natrec", "scrutinee is not a natural number");
            Term res = infer(ctx, n->zero);
            check(ctx.with_var(n->a, nat).with_var(n->r, res), n->suc, res);
            return res;
        }
        if (t->is<tm::Pi>() || t->is<tm::Ind>() || t->is<tm::PathTy>())
            fail(Kind::Unsupported, "universe", "types are not terms here: " + print(t));
        fail(Kind::Unsupported, "infer", "cannot infer the type of " + print(t));
    }

    Term head_beta(const CheckCtx& ctx, const Term& t) {
        const auto* n = t->as<tm::App>();
        if (!n) return nullptr;
        if (const auto* lam = n->fn->as<tm::Lam>()) {
            infer(ctx, n->arg);
            return subst1(lam->body, lam->x, n->arg);
        }
        Term f = head_beta(ctx, n->fn);
        return f ? mk::app(f, n->arg) : nullptr;
    }

    Term elim(const CheckCtx& ctx, const tm::Elim& n) {
        At at(*this, "elim");
        Term st;
        try {
            st = whnf(ctx, infer(ctx, n.scrut));
        } catch (const CheckError& e) {
            if (e.kind != Kind::Unsupported) throw;
            fail(Kind::Unsupported, "elim", "scrutinee type cannot be inferred: " + e.message);
        }
        const auto* ind = st->as<tm::Ind>();
        if (!ind) fail(Kind::Conversion, "elim", "scrutinee is not inductive: " + print(st));
        if (n.deltas.size() != ind->delta.size()) fail(Kind::Arity, "elim", "motive index binders do not match");
        args(ctx, n.indices, ind->delta, "elim-indices");
        same_indices(ctx, n.indices, ind->indices, "elim");
        Motive mot{n.deltas, n.h, n.motive};
        motive(ctx, ind->delta, ind->schema, mot);
        elim_list(ctx, ind->delta, ind->schema, mot, n.cases);
        Subst s;
        for (size_t i = 0; i < n.deltas.size(); ++i) s.add_term(n.deltas[i], n.indices[i]);
        s.add_term(n.h, n.scrut);
        return substitute(n.motive, s);
    }

    CheckCtx motive_ctx(const CheckCtx& ctx, const Telescope& delta, const Schema& k, const Motive& mot) {
        CheckCtx c = ctx;
        Subst s;
        for (size_t i = 0; i < delta.size(); ++i) {
            c = c.with_var(mot.deltas[i], substitute(delta[i].second, s));
            s.add_term(delta[i].first, mk::var(mot.deltas[i]));
        }
        return c.with_var(mot.h, mk::ind(delta, k, vars_of(mot.deltas)));
    }

    void motive(const CheckCtx& ctx, const Telescope& delta, const Schema& k, const Motive& mot) {
        At at(*this, "motive");
        type(motive_ctx(ctx, delta, k, mot), mot.body);
    }

    void elim_list(const CheckCtx& ctx, const Telescope& delta, const Schema& k, const Motive& mot,
                   const ElimList& cases) {
        if (cases.size() != k->entries.size())
            fail(Kind::Arity, "elim-list", "expected " + std::to_string(k->entries.size()) + " cases, got " +
                                               std::to_string(cases.size()));
        for (size_t i = 0; i < cases.size(); ++i) {
            const ElimCase& ec = cases[i];
            At at(*this, "case " + ec.label);
            if (ec.label != k->entries[i].label)
                fail(Kind::LabelOrder, "elim-height", "case " + ec.label + " at position " + std::to_string(i) +
                                                          " but constructor " + k->entries[i].label + " has that height");
            const Constructor& c = k->entries[i].c;
            if (ec.dims.size() != c.dims.size() || ec.params.size() != c.params.size() ||
                ec.recs.size() != c.args.size() || ec.results.size() != c.args.size())
                fail(Kind::Arity, "elim-match", "case binders do not match the constructor");
            CheckCtx cc = ctx;
            Subst s;
            DimSubst rename;
            for (size_t j = 0; j < c.dims.size(); ++j) {
                cc = cc.with_dim(ec.dims[j]);
                s.add_dim(c.dims[j], Dim::of(ec.dims[j]));
                rename.set(c.dims[j], Dim::of(ec.dims[j]));
            }
            for (size_t j = 0; j < c.params.size(); ++j) {
                cc = cc.with_var(ec.params[j], substitute(c.params[j].second, s));
                s.add_term(c.params[j].first, mk::var(ec.params[j]));
            }
            ArgCtx theta;
            for (const auto& [p, a] : c.args) theta.emplace_back(p, substitute(a, s));
            Family fam = self_family(delta, k);
            for (size_t j = 0; j < theta.size(); ++j) cc = cc.with_var(ec.recs[j], tyatty(theta[j].second, fam));
            for (size_t j = 0; j < theta.size(); ++j)
                cc = cc.with_var(ec.results[j], tyatty_dep(theta[j].second, mot, mk::var(ec.recs[j])));
            std::vector<Dim> xs;
            for (const auto& x : ec.dims) xs.push_back(Dim::of(x));
            Term in = mk::intro(k, ec.label, xs, vars_of(ec.params), vars_of(ec.recs));
            Subst ms;
            std::vector<Term> idx = substitute(c.indices, s);
            for (size_t j = 0; j < mot.deltas.size(); ++j) ms.add_term(mot.deltas[j], idx[j]);
            ms.add_term(mot.h, in);
            check(cc, ec.body, substitute(mot.body, ms));
            ElimList prefix(cases.begin(), cases.begin() + static_cast<long>(i));
            for (const auto& face : c.boundary) {
                Constraint xi = dim_subst(face.xi, rename);
                auto psi = constraint_mgu(xi);
                if (!psi) continue;
                At fat(*this, "face " + print(xi));
                Term rhs;
                try {
                    rhs = insttm_dep(theta, substitute(face.body, s), k, prefix, mot, vars_of(ec.recs),
                                     vars_of(ec.results));
                } catch (const InterpError& e) {
                    fail(Kind::LabelOrder, "elim-coherence", e.what());
                }
                if (!conv(restrict(cc, *psi), dim_subst(ec.body, *psi), dim_subst(rhs, *psi)))
                    fail(Kind::Conversion, "elim-coherence",
                         "case body disagrees with the boundary under " + print(xi));
            }
        }
    }

    // ---- schemas -----------------------------------------------------------

    void constrs(const CheckCtx& ctx, const Telescope& delta, const Schema& k) {
        bool cacheable = k->fv.closed() && closed_telescope(delta);
        if (cacheable && schema_cache().has(k, delta, opts_.ext_natrec)) return;
        At at(*this, "data " + k->name);
        for (size_t i = 0; i < k->entries.size(); ++i)
            for (size_t j = 0; j < i; ++j)
                if (k->entries[i].label == k->entries[j].label)
                    fail(Kind::LabelOrder, "constrs", "duplicate label " + k->entries[i].label);
        CheckCtx cd = telescope(ctx, delta);
        (void)cd;
        for (size_t i = 0; i < k->entries.size(); ++i) {
            std::vector<ConstrEntry> pre(k->entries.begin(), k->entries.begin() + static_cast<long>(i));
            std::vector<std::string> later;
            for (size_t j = i; j < k->entries.size(); ++j) later.push_back(k->entries[j].label);
            constructor(ctx, delta, mk::schema(k->name, std::move(pre)), later, k->entries[i].label,
                        k->entries[i].c);
        }
        if (cacheable) schema_cache().add(k, delta, opts_.ext_natrec);
    }

    void constructor(const CheckCtx& ctx, const Telescope& delta, const Schema& prefix,
                     const std::vector<std::string>& later, const std::string& label, const Constructor& c) {
        At at(*this, "constructor " + label);
        CheckCtx cx = ctx;
        for (const auto& x : c.dims) cx = cx.with_dim(x);
        CheckCtx cg = telescope(cx, c.params);
        args(cg, c.indices, delta, "constructor-indices");
        for (const auto& [p, a] : c.args) {
            At pa(*this, "argument " + std::string(p.text()));
            argtype(cg, delta, a);
        }
        ConstraintCtx xis;
        for (const auto& f : c.boundary) {
            for (const Dim* r : {&f.xi.lhs, &f.xi.rhs})
                if (r->is_var() && std::find(c.dims.begin(), c.dims.end(), r->var) == c.dims.end())
                    fail(Kind::Validity, "constructor-d", "boundary mentions " + print(*r) +
                                                              ", which is not a dimension parameter");
            xis.push_back(f.xi);
        }
        if (!xis.empty() && !ctx_valid(xis))
            fail(Kind::Validity, "constructor-d", "boundary system is neither empty nor valid");
        ArgType self = mk::self_at(c.indices);
        for (size_t k = 0; k < c.boundary.size(); ++k) {
            At fa(*this, "boundary " + print(c.boundary[k].xi));
            auto psi = constraint_mgu(c.boundary[k].xi);
            if (!psi) continue;
            BCtx bc{restrict(cg, *psi), delta, prefix, later, dim_subst_args(c.args, *psi)};
            bcheck(bc, dim_subst(c.boundary[k].body, *psi), dim_subst_arg(self, *psi));
            for (size_t l = k + 1; l < c.boundary.size(); ++l) {
                auto both = constraints_mgu({c.boundary[k].xi, c.boundary[l].xi});
                if (!both) continue;
                BCtx b2{restrict(cg, *both), delta, prefix, later, dim_subst_args(c.args, *both)};
                if (!bequal(b2, dim_subst(c.boundary[k].body, *both), dim_subst(c.boundary[l].body, *both)))
                    fail(Kind::Conversion, "constructor-e",
                         "boundaries at " + print(c.boundary[k].xi) + " and " + print(c.boundary[l].xi) + " disagree");
            }
        }
    }

    void argtype(const CheckCtx& ctx, const Telescope& delta, const ArgType& a) {
        if (const auto* s = a->as<at::SelfAt>()) {
            args(ctx, s->indices, delta, "argtype-self");
            return;
        }
        const auto& p = std::get<at::Pi>(a->v);
        type(ctx, p.dom);
        argtype(ctx.with_var(p.b, p.dom), delta, p.cod);
    }

    bool argtype_equal(const CheckCtx& ctx, const ArgType& a, const ArgType& b) {
        const auto* sa = a->as<at::SelfAt>();
        const auto* sb = b->as<at::SelfAt>();
        if (sa || sb) {
            if (!sa || !sb || sa->indices.size() != sb->indices.size()) return false;
            return conv_all(ctx, sa->indices, sb->indices);
        }
        const auto& pa = std::get<at::Pi>(a->v);
        const auto& pb = std::get<at::Pi>(b->v);
        if (!conv(ctx, pa.dom, pb.dom)) return false;
        Name v = fresh_name(pa.b);
        Subst s1, s2;
        s1.add_term(pa.b, mk::var(v));
        s2.add_term(pb.b, mk::var(v));
        return argtype_equal(ctx.with_var(v, pa.dom), substitute(pa.cod, s1), substitute(pb.cod, s2));
    }

    // ---- boundary terms ----------------------------------------------------

    bool bequal(const BCtx& bc, const BTerm& m, const BTerm& n) {
        if (alpha_equal(m, n)) return true;
        CheckCtx c = bc.ctx;
        Family fam = self_family(bc.delta, bc.prefix);
        std::vector<Term> vs;
        for (const auto& [p, a] : bc.theta) {
            Name v = fresh_name(p);
            c = c.with_var(v, tyatty(a, fam));
            vs.push_back(mk::var(v));
        }
        try {
            return conv(c, insttm(bc.theta, m, bc.prefix, vs), insttm(bc.theta, n, bc.prefix, vs));
        } catch (const InterpError& e) {
            fail(Kind::LabelOrder, "boundary-interp", e.what());
        }
    }

    ArgType binfer(const BCtx& bc, const BTerm& m) {
        if (const auto* n = m->as<bt::Var>()) {
            for (auto it = bc.theta.rbegin(); it != bc.theta.rend(); ++it)
                if (it->first == n->p) return it->second;
            fail(Kind::Scope, "hyp", "unbound boundary variable " + std::string(n->p.text()));
        }
        if (const auto* n = m->as<bt::App>()) {
            ArgType f = binfer(bc, n->fn);
            const auto* pi = f->as<at::Pi>();
            if (!pi) fail(Kind::Conversion, "arrow-E", "applying a boundary term of type " + print(f));
            check(bc.ctx, n->arg, pi->dom);
            Subst s;
            s.add_term(pi->b, n->arg);
            return substitute(pi->cod, s);
        }
        fail(Kind::Unsupported, "boundary-infer", "cannot infer the argument type of " + print(m));
    }

    void bcheck(const BCtx& bc, const BTerm& m, const ArgType& expected) {
        const auto* self = expected->as<at::SelfAt>();
        if (const auto* n = m->as<bt::Intro>()) {
            if (!self) fail(Kind::Conversion, "intro-I", "constructor at a function argument type");
            const Constructor* c = bc.prefix->find(n->label);
            if (!c) {
                if (std::find(bc.later.begin(), bc.later.end(), n->label) != bc.later.end())
                    fail(Kind::LabelOrder, "intro-I", "constructor " + n->label + " is not defined earlier");
                fail(Kind::Scope, "intro-I", "unknown constructor " + n->label);
            }
            if (c->dims.size() != n->dims.size()) fail(Kind::Arity, "intro-I", "wrong number of dimensions");
            for (const auto& r : n->dims) dim(bc.ctx, r);
            Subst s;
            for (size_t i = 0; i < c->dims.size(); ++i) s.add_dim(c->dims[i], n->dims[i]);
            args(bc.ctx, n->params, substitute(c->params, s), "intro-I-params");
            for (size_t i = 0; i < c->params.size(); ++i) s.add_term(c->params[i].first, n->params[i]);
            if (c->args.size() != n->args.size()) fail(Kind::Arity, "intro-I", "wrong number of recursive arguments");
            for (size_t j = 0; j < n->args.size(); ++j) bcheck(bc, n->args[j], substitute(c->args[j].second, s));
            same_indices(bc.ctx, substitute(c->indices, s), self->indices, "intro-I");
            return;
        }
        if (const auto* n = m->as<bt::Fhcom>()) {
            if (!self) fail(Kind::Conversion, "fhcom-I", "fhcom at a function argument type");
            args(bc.ctx, n->indices, bc.delta, "fhcom-I-indices");
            same_indices(bc.ctx, n->indices, self->indices, "fhcom-I");
            dim(bc.ctx, n->r);
            dim(bc.ctx, n->s);
            bcheck(bc, n->cap, expected);
            ConstraintCtx xis;
            for (const auto& f : n->tube) {
                constraint(bc.ctx, f.xi);
                xis.push_back(f.xi);
            }
            if (!ctx_valid(xis)) fail(Kind::Validity, "fhcom-I", "tube constraints are not valid");
            Name y = fresh_name("y");
            for (size_t i = 0; i < n->tube.size(); ++i) {
                const BFace& f = n->tube[i];
                auto psi = constraint_mgu(f.xi);
                if (!psi) continue;
                BCtx bi{restrict(bc.ctx, *psi).with_dim(y), bc.delta, bc.prefix, bc.later,
                        dim_subst_args(bc.theta, *psi)};
                BTerm body = dim_subst(dim_subst(f.body, DimSubst::single(f.y, Dim::of(y))), *psi);
                bcheck(bi, body, dim_subst_arg(expected, *psi));
                BCtx br = bi;
                br.ctx = restrict(bc.ctx, *psi);
                BTerm at_r = dim_subst(dim_subst(f.body, DimSubst::single(f.y, n->r)), *psi);
                if (!bequal(br, at_r, dim_subst(n->cap, *psi)))
                    fail(Kind::Conversion, "fhcom-I-cap", "face " + print(f.xi) + " disagrees with the cap");
                for (size_t j = i + 1; j < n->tube.size(); ++j) {
                    auto both = constraints_mgu({f.xi, n->tube[j].xi});
                    if (!both) continue;
                    BCtx bj{restrict(bc.ctx, *both).with_dim(y), bc.delta, bc.prefix, bc.later,
                            dim_subst_args(bc.theta, *both)};
                    BTerm a = dim_subst(dim_subst(f.body, DimSubst::single(f.y, Dim::of(y))), *both);
                    BTerm b = dim_subst(dim_subst(n->tube[j].body, DimSubst::single(n->tube[j].y, Dim::of(y))), *both);
                    if (!bequal(bj, a, b))
                        fail(Kind::Conversion, "fhcom-I-adj", "faces " + print(f.xi) + " and " +
                                                                  print(n->tube[j].xi) + " disagree");
                }
            }
            return;
        }
        if (const auto* n = m->as<bt::Fcoe>()) {
            if (!self) fail(Kind::Conversion, "fcoe-I", "fcoe at a function argument type");
            line(bc.ctx, n->z, n->indices, bc.delta);
            dim(bc.ctx, n->r);
            dim(bc.ctx, n->s);
            same_indices(bc.ctx, dim_subst(n->indices, DimSubst::single(n->z, n->s)), self->indices, "fcoe-I");
            bcheck(bc, n->body, mk::self_at(dim_subst(n->indices, DimSubst::single(n->z, n->r))));
            return;
        }
        if (const auto* n = m->as<bt::Lam>()) {
            const auto* pi = expected->as<at::Pi>();
            if (!pi) fail(Kind::Conversion, "arrow-I", "boundary lambda at a self type");
            BCtx inner = bc;
            inner.ctx = bc.ctx.with_var(n->a, pi->dom);
            Subst s;
            s.add_term(pi->b, mk::var(n->a));
            bcheck(inner, n->body, substitute(pi->cod, s));
            return;
        }
        if (const auto* n = m->as<bt::NatRec>()) {
            if (!opts_.ext_natrec) fail(Kind::Unsupported, "natrec", "boundary natrec needs --ext natrec");
            Term nat = whnf(bc.ctx, infer(bc.ctx, n->scrut));
            if (!nat_shaped(nat)) fail(Kind::Conversion, "natrec", "scrutinee is not a natural number");
            bcheck(bc, n->zero, expected);
            BCtx inner = bc;
            inner.ctx = bc.ctx.with_var(n->a, nat);
            inner.theta.emplace_back(n->p, expected);
            bcheck(inner, n->suc, expected);
            return;
        }
        ArgType got = binfer(bc, m);
        if (!argtype_equal(bc.ctx, got, expected))
            fail(Kind::Conversion, "boundary-conv", "expected " + print(expected) + ", got " + print(got));
    }

private:
    const CheckOptions& opts_;
};

template <class F>
CheckResult guard(const CheckOptions& opts, F f) {
    Checker c(opts);
    try {
        f(c);
    } catch (const CheckError& e) {
        return e;
    } catch (const InterpError& e) {
        return CheckError(Kind::Scope, "", "interp", e.what());
    }
    return std::nullopt;
}

}  // namespace

CheckResult check_telescope(const CheckCtx& ctx, const Telescope& tel, const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) { c.telescope(ctx, tel); });
}

CheckResult check_constrs(const CheckCtx& ctx, const Telescope& delta, const Schema& k, const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) {
        c.telescope(ctx, delta);
        c.constrs(ctx, delta, k);
    });
}

CheckResult check_constructor(const CheckCtx& ctx, const Telescope& delta, const Schema& prefix,
                              const std::string& label, const Constructor& con, const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) { c.constructor(ctx, delta, prefix, {label}, label, con); });
}

CheckResult check_boundary_term(const CheckCtx& ctx, const Telescope& delta, const Schema& prefix,
                                const ArgCtx& theta, const BTerm& m, const ArgType& expected,
                                const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) { c.bcheck(BCtx{ctx, delta, prefix, {}, theta}, m, expected); });
}

CheckResult check_elim_list(const CheckCtx& ctx, const Telescope& delta, const Schema& k, const Motive& motive,
                            const ElimList& cases, const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) {
        c.motive(ctx, delta, k, motive);
        c.elim_list(ctx, delta, k, motive, cases);
    });
}

CheckResult check_type(const CheckCtx& ctx, const Term& a, const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) { c.type(ctx, a); });
}

CheckResult check_term(const CheckCtx& ctx, const Term& t, const Term& expected, const CheckOptions& opts) {
    return guard(opts, [&](Checker& c) { c.check(ctx, t, expected); });
}

InferResult infer_term(const CheckCtx& ctx, const Term& t, const CheckOptions& opts) {
    InferResult r;
    r.error = guard(opts, [&](Checker& c) { r.type = c.infer(ctx, t); });
    if (r.error) r.type = nullptr;
    return r;
}

bool convert(const CheckCtx& ctx, const Term& a, const Term& b, const CheckOptions& opts) {
    Checker c(opts);
    return c.conv(ctx, a, b);
}

}  // namespace cubind
