#include "cubind/evaluator.hpp"

#include <cstdlib>
#include <functional>

#include "cubind/constraints.hpp"
#include "cubind/printer.hpp"

namespace cubind {

uint64_t default_fuel() {
    if (const char* env = std::getenv("CUBIND_FUEL")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultFuel;
}

namespace {

bool schema_ok(const Schema& k, bool zero_dim, int depth) {
    if (depth > 8 || !k->fv.closed()) return false;
    for (const auto& e : k->entries) {
        const Constructor& c = e.c;
        if (!c.indices.empty()) return false;
        if (zero_dim && !c.dims.empty()) return false;
        for (const auto& [p, a] : c.args) {
            const auto* self = a->as<at::SelfAt>();
            if (!self || !self->indices.empty()) return false;
        }
        for (const auto& [x, a] : c.params) {
            const auto* ind = a->as<tm::Ind>();
            if (!ind || !ind->delta.empty() || !ind->indices.empty()) return false;
            if (!schema_ok(ind->schema, zero_dim, depth + 1)) return false;
        }
    }
    return true;
}

// Index of the first satisfied constraint, or -1.
template <class Faces, class Get>
int first_satisfied(const Faces& faces, Get get) {
    for (size_t i = 0; i < faces.size(); ++i)
        if (constraint_satisfied(get(faces[i]))) return static_cast<int>(i);
    return -1;
}

// The constructor boundary constraints instantiated at the intro's dims.
Constraint boundary_at(const Constructor& c, size_t k, const std::vector<Dim>& dims) {
    DimSubst psi;
    for (size_t i = 0; i < c.dims.size() && i < dims.size(); ++i) psi.set(c.dims[i], dims[i]);
    return dim_subst(c.boundary[k].xi, psi);
}

int intro_face(const tm::Intro& n, const Constructor& c) {
    for (size_t k = 0; k < c.boundary.size(); ++k)
        if (constraint_satisfied(boundary_at(c, k, n.dims))) return static_cast<int>(k);
    return -1;
}

Term intro_boundary(const tm::Intro& n, const Constructor& c, size_t k) {
    Subst s;
    for (size_t i = 0; i < c.dims.size(); ++i) s.add_dim(c.dims[i], n.dims[i]);
    for (size_t i = 0; i < c.params.size(); ++i) s.add_term(c.params[i].first, n.params[i]);
    BTerm m = substitute(c.boundary[k].body, s);
    return insttm(c.args, m, n.schema, n.args);
}

Tube map_tube(const Tube& tube, const std::function<Term(const Term&)>& f) {
    Tube out;
    for (const auto& face : tube) out.push_back(Face{face.xi, face.y, f(face.body)});
    return out;
}

class Stepper {
public:
    explicit Stepper(const EvalOptions& opts) : opts_(opts) {}

    StepResult step(const Term& t) {
        return std::visit([&](const auto& n) { return this->rule(t, n); }, t->v);
    }

private:
    const EvalOptions& opts_;

    // Steps `sub` and rebuilds the parent around its reduct.
    template <class Rebuild>
    StepResult congruence(const Term& sub, Rebuild rebuild) {
        StepResult r = step(sub);
        if (r.kind == StepResult::Kind::Steps) return StepResult::steps(rebuild(r.next));
        if (r.kind == StepResult::Kind::Stuck) return r;
        return StepResult::stuck("congruence on a value");
    }

    StepResult rule(const Term&, const tm::Var& n) {
        return StepResult::stuck("free variable " + std::string(n.x.text()));
    }
    StepResult rule(const Term&, const tm::Lam&) { return StepResult::value(); }
    StepResult rule(const Term&, const tm::Pi&) { return StepResult::value(); }
    StepResult rule(const Term&, const tm::Ind&) { return StepResult::value(); }
    StepResult rule(const Term&, const tm::PathTy&) { return StepResult::value(); }
    StepResult rule(const Term&, const tm::PLam&) { return StepResult::value(); }

    StepResult rule(const Term&, const tm::App& n) {
        if (const auto* lam = n.fn->as<tm::Lam>()) return StepResult::steps(subst1(lam->body, lam->x, n.arg));
        if (is_value(n.fn)) return StepResult::stuck("application of a non-function");
        return congruence(n.fn, [&](const Term& f) { return mk::app(f, n.arg); });
    }

    StepResult rule(const Term&, const tm::PApp& n) {
        if (const auto* pl = n.path->as<tm::PLam>()) return StepResult::steps(dsubst1(pl->body, pl->x, n.r));
        if (is_value(n.path)) return StepResult::stuck("path application of a non-path");
        return congruence(n.path, [&](const Term& p) { return mk::papp(p, n.r); });
    }

    StepResult rule(const Term&, const tm::Intro& n) {
        const Constructor* c = n.schema->find(n.label);
        if (!c) return StepResult::stuck("unknown constructor " + n.label);
        if (c->dims.size() != n.dims.size() || c->params.size() != n.params.size() ||
            c->args.size() != n.args.size())
            return StepResult::stuck("constructor arity mismatch at " + n.label);
        int k = intro_face(n, *c);
        if (k < 0) return StepResult::value();
        return StepResult::steps(intro_boundary(n, *c, static_cast<size_t>(k)));
    }

    StepResult rule(const Term&, const tm::Fhcom& n) {
        int i = first_satisfied(n.tube, [](const Face& f) { return f.xi; });
        if (i >= 0) return StepResult::steps(dsubst1(n.tube[i].body, n.tube[i].y, n.s));
        if (n.r == n.s) return StepResult::steps(n.cap);
        return StepResult::value();
    }

    StepResult rule(const Term&, const tm::Fcoe& n) {
        if (n.line.empty() || n.r == n.s) return StepResult::steps(n.body);
        return StepResult::value();
    }

    StepResult rule(const Term&, const tm::Fcom& n) {
        // fhcom r r' (fcoe z.I r r' M) [ξ_i -> y. fcoe z.I y r' N_i]
        Tube tube;
        for (const auto& f : n.tube) tube.push_back(Face{f.xi, f.y, mk::fcoe(n.z, n.line, Dim::of(f.y), n.s, f.body)});
        return StepResult::steps(mk::fhcom(n.r, n.s, mk::fcoe(n.z, n.line, n.r, n.s, n.cap), std::move(tube)));
    }

    StepResult rule(const Term&, const tm::Hcom& n) {
        if (!is_value(n.type))
            return congruence(n.type, [&](const Term& a) { return mk::hcom(a, n.r, n.s, n.cap, n.tube); });
        if (const auto* ind = n.type->as<tm::Ind>()) {
            if (opts_.opt_closed && ind->delta.empty() && ind->indices.empty() && closed_zero_dim_schema(ind->schema))
                return StepResult::steps(n.cap);
            return StepResult::steps(mk::fhcom(n.r, n.s, n.cap, n.tube));
        }
        if (const auto* pi = n.type->as<tm::Pi>()) {
            // λa. hcom{B} r r' (M a) [ξ_i -> y. N_i a]
            Name a = fresh_name(pi->x);
            Term va = mk::var(a);
            Term cod = subst1(pi->cod, pi->x, va);
            Tube tube = map_tube(n.tube, [&](const Term& b) { return mk::app(b, va); });
            return StepResult::steps(mk::lam(a, mk::hcom(cod, n.r, n.s, mk::app(n.cap, va), std::move(tube))));
        }
        if (const auto* p = n.type->as<tm::PathTy>()) {
            // <x> hcom{A} r r' (M @ x) [ξ_i -> y. N_i @ x | x=0 -> _. P0 | x=1 -> _. P1]
            Name x = fresh_name(p->x);
            Term a = dsubst1(p->type, p->x, Dim::of(x));
            Tube tube = map_tube(n.tube, [&](const Term& b) { return mk::papp(b, Dim::of(x)); });
            tube.push_back(Face{{Dim::of(x), Dim::zero()}, fresh_name("_"), p->left});
            tube.push_back(Face{{Dim::of(x), Dim::one()}, fresh_name("_"), p->right});
            return StepResult::steps(
                mk::plam(x, mk::hcom(a, n.r, n.s, mk::papp(n.cap, Dim::of(x)), std::move(tube))));
        }
        return StepResult::stuck("hcom at an unsupported type");
    }

    StepResult rule(const Term&, const tm::Coe& n) {
        if (!is_value(n.type))
            return congruence(n.type, [&](const Term& a) { return mk::coe(n.z, a, n.r, n.s, n.body); });
        if (const auto* ind = n.type->as<tm::Ind>()) {
            if (opts_.opt_closed && ind->delta.empty() && ind->indices.empty() && closed_schema(ind->schema))
                return StepResult::steps(n.body);
            // fcoe{z'. mcoe{z.Δ} z' r' I[z'/z]} r r' (tcoe{z.(Δ,K)} r r' M)
            Name z2 = fresh_name(n.z);
            std::vector<Term> at_z2;
            for (const auto& i : ind->indices) at_z2.push_back(dsubst1(i, n.z, Dim::of(z2)));
            std::vector<Term> line = mcoe(n.z, ind->delta, Dim::of(z2), n.s, at_z2);
            return StepResult::steps(mk::fcoe(z2, std::move(line), n.r, n.s,
                                              mk::tcoe(n.z, ind->delta, ind->schema, n.r, n.s, n.body)));
        }
        if (const auto* pi = n.type->as<tm::Pi>()) {
            // λa. coe{z. C[coe{z.B} r' z a / x]} r r' (M (coe{z.B} r' r a))
            Name a = fresh_name(pi->x);
            Term va = mk::var(a);
            Name w1 = fresh_name(n.z);
            Term back_z = mk::coe(w1, dsubst1(pi->dom, n.z, Dim::of(w1)), n.s, Dim::of(n.z), va);
            Name w2 = fresh_name(n.z);
            Term back_r = mk::coe(w2, dsubst1(pi->dom, n.z, Dim::of(w2)), n.s, n.r, va);
            Term cod = subst1(pi->cod, pi->x, back_z);
            return StepResult::steps(mk::lam(a, mk::coe(n.z, cod, n.r, n.s, mk::app(n.body, back_r))));
        }
        if (const auto* p = n.type->as<tm::PathTy>()) {
            // <x> com{z. A} r r' (M @ x) [x=0 -> z. P0 | x=1 -> z. P1]
            Name x = fresh_name(p->x);
            Term a = dsubst1(p->type, p->x, Dim::of(x));
            Name y0 = fresh_name(n.z), y1 = fresh_name(n.z);
            Tube tube;
            tube.push_back(Face{{Dim::of(x), Dim::zero()}, y0, dsubst1(p->left, n.z, Dim::of(y0))});
            tube.push_back(Face{{Dim::of(x), Dim::one()}, y1, dsubst1(p->right, n.z, Dim::of(y1))});
            return StepResult::steps(
                mk::plam(x, mk::com(n.z, a, n.r, n.s, mk::papp(n.body, Dim::of(x)), std::move(tube))));
        }
        return StepResult::stuck("coe at an unsupported type");
    }

    StepResult rule(const Term&, const tm::Com& n) {
        // hcom{A[r'/z]} r r' (coe{z.A} r r' M) [ξ_i -> y. coe{z.A} y r' N_i]
        Tube tube;
        for (const auto& f : n.tube)
            tube.push_back(Face{f.xi, f.y, mk::coe(n.z, n.type, Dim::of(f.y), n.s, f.body)});
        return StepResult::steps(mk::hcom(dsubst1(n.type, n.z, n.s), n.r, n.s, mk::coe(n.z, n.type, n.r, n.s, n.cap),
                                          std::move(tube)));
    }

    StepResult rule(const Term&, const tm::Tcoe& n) {
        if (!is_value(n.body))
            return congruence(n.body, [&](const Term& m) { return mk::tcoe(n.z, n.delta, n.schema, n.r, n.s, m); });
        auto again = [&](const Term& m) { return mk::tcoe(n.z, n.delta, n.schema, n.r, n.s, m); };
        if (const auto* f = n.body->as<tm::Fhcom>())
            return StepResult::steps(mk::fhcom(f->r, f->s, again(f->cap), map_tube(f->tube, again)));
        if (const auto* f = n.body->as<tm::Fcoe>()) {
            Name y = fresh_name(f->z);
            std::vector<Term> js;
            for (const auto& j : f->line) js.push_back(dsubst1(j, f->z, Dim::of(y)));
            return StepResult::steps(mk::fcoe(y, mcoe(n.z, n.delta, n.r, n.s, js), f->r, f->s, again(f->body)));
        }
        if (const auto* in = n.body->as<tm::Intro>()) return tcoe_intro(n, *in);
        return StepResult::stuck("tcoe of a non-inductive value");
    }

    StepResult tcoe_intro(const tm::Tcoe& n, const tm::Intro& in) {
        const Constructor* c = n.schema->find(in.label);
        if (!c || c->params.size() != in.params.size() || c->args.size() != in.args.size())
            return StepResult::stuck("tcoe: constructor mismatch at " + in.label);
        // P^d = mcoe{z.Γ} r d P
        auto params_at = [&](const Dim& d) { return mcoe(n.z, c->params, n.r, d, in.params); };
        // Substitution z := w, γ := P^w used for everything living over the line.
        auto over = [&](const Dim& w, const std::vector<Term>& pw) {
            Subst s;
            s.add_dim(n.z, w);
            for (size_t i = 0; i < pw.size(); ++i) s.add_term(c->params[i].first, pw[i]);
            return s;
        };
        // N_j^d = coe{w. tyatty(b_j[w/z][P^w/γ], δ.Ind(Δ[w/z], K[w/z], δ))} r d N_j
        auto args_at = [&](const Dim& d) {
            std::vector<Term> out;
            for (size_t j = 0; j < c->args.size(); ++j) {
                Name w = fresh_name(n.z);
                Subst s = over(Dim::of(w), params_at(Dim::of(w)));
                ArgType b = substitute(c->args[j].second, s);
                Subst zw;
                zw.add_dim(n.z, Dim::of(w));
                Telescope delta = substitute(n.delta, zw);
                std::vector<Name> ds;
                std::vector<Term> dvars;
                for (const auto& e : delta) {
                    ds.push_back(fresh_name(e.first));
                    dvars.push_back(mk::var(ds.back()));
                }
                Term fam = mk::ind(delta, substitute(n.schema, zw), dvars);
                out.push_back(mk::coe(w, tyatty(b, Family{ds, fam}), n.r, d, in.args[j]));
            }
            return out;
        };
        // index line at w: mcoe{z.Δ} w r' (I[w/z][P^w/γ])
        Name w = fresh_name(n.z);
        std::vector<Term> pw = params_at(Dim::of(w));
        std::vector<Term> idx = substitute(c->indices, over(Dim::of(w), pw));
        std::vector<Term> line = mcoe(n.z, n.delta, Dim::of(w), n.s, idx);

        Subst zs;
        zs.add_dim(n.z, n.s);
        Schema ks = substitute(n.schema, zs);
        Term cap = mk::intro(ks, in.label, in.dims, params_at(n.s), args_at(n.s));
        if (c->boundary.empty()) return StepResult::steps(mk::fcoe(w, std::move(line), n.s, n.r, cap));

        Tube tube;
        for (size_t k = 0; k < c->boundary.size(); ++k) {
            Name v = fresh_name(n.z);
            Dim dv = Dim::of(v);
            std::vector<Term> pv = params_at(dv);
            Subst s = over(dv, pv);
            for (size_t i = 0; i < c->dims.size(); ++i) s.add_dim(c->dims[i], in.dims[i]);
            BTerm m = substitute(c->boundary[k].body, s);
            Subst zv;
            zv.add_dim(n.z, dv);
            Term inst = insttm(c->args, m, substitute(n.schema, zv), args_at(dv));
            Constraint xi = boundary_at(*c, k, in.dims);
            tube.push_back(Face{xi, v, mk::tcoe(n.z, n.delta, n.schema, dv, n.s, inst)});
        }
        return StepResult::steps(mk::fcom(w, std::move(line), n.s, n.r, cap, std::move(tube)));
    }

    StepResult rule(const Term&, const tm::Elim& n) {
        if (!is_value(n.scrut))
            return congruence(n.scrut, [&](const Term& m) {
                return mk::elim(n.deltas, n.h, n.motive, n.indices, m, n.cases);
            });
        auto again = [&](const std::vector<Term>& idx, const Term& m) {
            return mk::elim(n.deltas, n.h, n.motive, idx, m, n.cases);
        };
        auto motive_at = [&](const std::vector<Term>& idx, const Term& h) {
            Subst s;
            for (size_t i = 0; i < n.deltas.size(); ++i) s.add_term(n.deltas[i], idx[i]);
            s.add_term(n.h, h);
            return substitute(n.motive, s);
        };
        if (const auto* f = n.scrut->as<tm::Fhcom>()) {
            // com{y. D[I/δ][fhcom r y M tube/h]} r r' (elim M) [ξ_i -> y. elim N_i]
            Name y = fresh_name("y");
            Term line = motive_at(n.indices, mk::fhcom(f->r, Dim::of(y), f->cap, f->tube));
            Tube tube = map_tube(f->tube, [&](const Term& b) { return again(n.indices, b); });
            return StepResult::steps(mk::com(y, line, f->r, f->s, again(n.indices, f->cap), std::move(tube)));
        }
        if (const auto* f = n.scrut->as<tm::Fcoe>()) {
            // coe{w. D[J[w/z]/δ][fcoe z.J r w M/h]} r r' (elim (J[r/z]) M)
            if (f->line.size() != n.deltas.size()) return StepResult::stuck("elim: index arity mismatch");
            Name w = fresh_name(f->z);
            std::vector<Term> jw, jr;
            for (const auto& j : f->line) {
                jw.push_back(dsubst1(j, f->z, Dim::of(w)));
                jr.push_back(dsubst1(j, f->z, f->r));
            }
            Term line = motive_at(jw, mk::fcoe(f->z, f->line, f->r, Dim::of(w), f->body));
            return StepResult::steps(mk::coe(w, line, f->r, f->s, again(jr, f->body)));
        }
        if (const auto* in = n.scrut->as<tm::Intro>()) {
            const Constructor* c = in->schema->find(in->label);
            const ElimCase* ec = find_case(n.cases, in->label);
            if (!c || !ec) return StepResult::stuck("elim: no case for " + in->label);
            if (c->args.size() != in->args.size() || c->params.size() != in->params.size())
                return StepResult::stuck("elim: constructor arity mismatch at " + in->label);
            // ρ_j = func(b_j[P/γ], δ'.h'. elim{δ.h.D} δ' h' ℰ, N_j)
            Subst ps;
            for (size_t i = 0; i < c->params.size(); ++i) ps.add_term(c->params[i].first, in->params[i]);
            std::vector<Term> results;
            for (size_t j = 0; j < c->args.size(); ++j) {
                Motive map;
                std::vector<Term> dv;
                for (const auto& d : n.deltas) {
                    map.deltas.push_back(fresh_name(d));
                    dv.push_back(mk::var(map.deltas.back()));
                }
                map.h = fresh_name(n.h);
                map.body = again(dv, mk::var(map.h));
                results.push_back(func_action(substitute(c->args[j].second, ps), map, in->args[j]));
            }
            if (ec->dims.size() != in->dims.size() || ec->params.size() != in->params.size() ||
                ec->recs.size() != in->args.size() || ec->results.size() != in->args.size())
                return StepResult::stuck("elim: case arity mismatch at " + in->label);
            return StepResult::steps(instantiate_case(*ec, in->dims, in->params, in->args, results));
        }
        return StepResult::stuck("elim of a non-inductive value");
    }

    StepResult rule(const Term&, const tm::NatRec& n) {
        if (!is_value(n.scrut))
            return congruence(n.scrut, [&](const Term& m) { return mk::natrec(m, n.zero, n.a, n.r, n.suc); });
        const auto* in = n.scrut->as<tm::Intro>();
        if (in && in->label == "zero" && in->args.empty() && in->params.empty()) return StepResult::steps(n.zero);
        if (in && in->label == "suc" && in->args.size() == 1 && in->params.empty()) {
            const Term& pred = in->args[0];
            Subst s;
            s.add_term(n.a, pred);
            s.add_term(n.r, mk::natrec(pred, n.zero, n.a, n.r, n.suc));
            return StepResult::steps(substitute(n.suc, s));
        }
        return StepResult::stuck("natrec of a non-numeral");
    }
};

}  // namespace

bool closed_schema(const Schema& k) { return schema_ok(k, false, 0); }
bool closed_zero_dim_schema(const Schema& k) { return schema_ok(k, true, 0); }

bool is_value(const Term& t) {
    switch (t->v.index()) {
        case 1:   // Lam
        case 3:   // Pi
        case 4:   // Ind
        case 14:  // PathTy
        case 15:  // PLam
            return true;
        default: break;
    }
    if (const auto* n = t->as<tm::Intro>()) {
        const Constructor* c = n->schema->find(n->label);
        if (!c || c->dims.size() != n->dims.size()) return false;
        return intro_face(*n, *c) < 0;
    }
    if (const auto* n = t->as<tm::Fhcom>())
        return n->r != n->s && first_satisfied(n->tube, [](const Face& f) { return f.xi; }) < 0;
    if (const auto* n = t->as<tm::Fcoe>()) return !n->line.empty() && n->r != n->s;
    return false;
}

StepResult step(const Term& t, const EvalOptions& opts) {
    Stepper s(opts);
    return s.step(t);
}

Term eval(const Term& t, uint64_t fuel, const EvalOptions& opts, uint64_t* steps) {
    Stepper s(opts);
    Term cur = t;
    uint64_t n = 0;
    while (true) {
        StepResult r = s.step(cur);
        if (r.kind == StepResult::Kind::IsValue) break;
        if (r.kind == StepResult::Kind::Stuck) {
            if (steps) *steps += n;
            throw EvalError(EvalError::Kind::Stuck, "stuck: " + r.reason);
        }
        if (++n > fuel) {
            if (steps) *steps += n;
            throw EvalError(EvalError::Kind::Fuel, "fuel exhausted after " + std::to_string(fuel) + " steps");
        }
        cur = std::move(r.next);
    }
    if (steps) *steps += n;
    return cur;
}

Trace trace(const Term& t, size_t max_steps, const EvalOptions& opts) {
    Stepper s(opts);
    Trace tr;
    tr.terms.push_back(t);
    while (true) {
        StepResult r = s.step(tr.terms.back());
        if (r.kind != StepResult::Kind::Steps) {
            tr.last = r;
            return tr;
        }
        if (tr.terms.size() > max_steps) {
            tr.last = r;
            tr.last.next = nullptr;
            return tr;
        }
        tr.terms.push_back(r.next);
    }
}

std::string ObservationTree::str() const {
    std::string s = label;
    if (children.empty()) return s;
    s += "(";
    for (size_t i = 0; i < children.size(); ++i) {
        if (i) s += ", ";
        s += children[i].str();
    }
    s += ")";
    return s;
}

namespace {

// One budget shared by every eval call made during a readback.
struct Budget {
    const EvalOptions& opts;
    uint64_t left;
    uint64_t* steps;

    Term run(const Term& t) {
        uint64_t n = 0;
        try {
            Term v = eval(t, left, opts, &n);
            left -= n;
            if (steps) *steps += n;
            return v;
        } catch (...) {
            if (steps) *steps += n;
            throw;
        }
    }
};

struct Observer {
    Budget b;

    ObservationTree go(const Term& t, const Term& type, int depth) {
        if (depth > 100000) throw EvalError(EvalError::Kind::Fuel, "observation too deep");
        Term ty = b.run(type);
        const auto* ind = ty->as<tm::Ind>();
        if (!ind || !ind->indices.empty())
            throw EvalError(EvalError::Kind::NotObservable, "not an observable type: " + print(ty));
        Term v = b.run(t);
        const auto* in = v->as<tm::Intro>();
        if (!in) throw EvalError(EvalError::Kind::NotCanonical, "value is not a constructor: " + print(v));
        const Constructor* c = ind->schema->find(in->label);
        if (!c) throw EvalError(EvalError::Kind::NotCanonical, "constructor " + in->label + " not in type");
        ObservationTree tree;
        tree.label = in->label;
        for (const auto& r : in->dims) tree.children.push_back(ObservationTree{print(r), {}});
        Subst ps;
        for (size_t i = 0; i < c->params.size(); ++i) {
            Term pty = substitute(c->params[i].second, ps);
            tree.children.push_back(go(in->params[i], pty, depth + 1));
            ps.add_term(c->params[i].first, in->params[i]);
        }
        for (size_t j = 0; j < c->args.size(); ++j) {
            const auto* self = c->args[j].second->as<at::SelfAt>();
            if (!self) throw EvalError(EvalError::Kind::NotObservable, "higher-order argument of " + in->label);
            tree.children.push_back(go(in->args[j], ty, depth + 1));
        }
        return tree;
    }
};

struct Normalizer {
    Budget b;

    std::vector<Term> all(const std::vector<Term>& ts) {
        std::vector<Term> out;
        for (const auto& t : ts) out.push_back(go(t));
        return out;
    }

    Term go(const Term& t) {
        Term v = b.run(t);
        if (const auto* in = v->as<tm::Intro>())
            return mk::intro(in->schema, in->label, in->dims, all(in->params), all(in->args));
        if (const auto* f = v->as<tm::Fhcom>()) {
            Tube tube;
            for (const auto& face : f->tube) tube.push_back(Face{face.xi, face.y, go(face.body)});
            return mk::fhcom(f->r, f->s, go(f->cap), std::move(tube));
        }
        if (const auto* f = v->as<tm::Fcoe>()) return mk::fcoe(f->z, all(f->line), f->r, f->s, go(f->body));
        return v;
    }
};

}  // namespace

ObservationTree observe(const Term& t, const Term& type, const EvalOptions& opts, uint64_t fuel, uint64_t* steps) {
    Observer o{{opts, fuel, steps}};
    return o.go(t, type, 0);
}

Term normalize(const Term& t, const EvalOptions& opts, uint64_t fuel) {
    Normalizer n{{opts, fuel, nullptr}};
    return n.go(t);
}

}  // namespace cubind
