#include "cubind/printer.hpp"

#include <map>
#include <set>
#include <sstream>

namespace cubind {

namespace {

class Printer {
public:
    explicit Printer(const PrintOptions& opts) : opts_(opts) {}

    // First pass records free names so that binders never capture them.
    void collect_mode(bool on) { collecting_ = on; }
    void reserve_collected() {
        for (const auto& [id, text] : free_) reserved_.insert(text);
    }

    std::string out;

    void dim(const Dim& r) {
        switch (r.kind) {
            case Dim::Kind::Zero: out += "0"; break;
            case Dim::Kind::One: out += "1"; break;
            case Dim::Kind::Var: name(r.var); break;
        }
    }
    void con(const Constraint& c) {
        dim(c.lhs);
        out += "=";
        dim(c.rhs);
    }

    void name(const Name& x) {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == x.id) {
                out += it->second;
                return;
            }
        std::string t(x.text());
        if (collecting_) free_.emplace(x.id, t);
        out += t;
    }

    // Binds a name, choosing printed text that does not clash.
    void bind(const Name& x, bool used = true) {
        std::string base(x.text());
        if (base == "_" && used) base = "v";
        std::string cand = base;
        if (cand != "_") {
            int n = 0;
            while (clashes(cand)) cand = base + std::to_string(++n);
        }
        scope_.emplace_back(x.id, cand);
        out += cand;
    }
    void unbind(size_t n = 1) { scope_.resize(scope_.size() - n); }

    // prec: 0 = term, 1 = application, 2 = atom
    void term(const Term& t, int prec) {
        if (opts_.defs) {
            auto it = opts_.defs->find(t.get());
            if (it != opts_.defs->end()) {
                out += it->second;
                return;
            }
        }
        std::visit([&](const auto& n) { this->node(n, prec); }, t->v);
    }

    void bterm(const BTerm& m, int prec) {
        std::visit([&](const auto& n) { this->bnode(n, prec); }, m->v);
    }

    void arg(const ArgType& a) {
        if (const auto* s = a->as<at::SelfAt>()) {
            out += "self";
            if (!s->indices.empty()) terms_paren(s->indices);
            return;
        }
        const auto& p = std::get<at::Pi>(a->v);
        bool dep = fv::contains(p.cod->fv.tm, p.b.id);
        if (dep) {
            out += "(";
            bind(p.b);
            out += " : ";
            term(p.dom, 0);
            out += ") -> ";
        } else {
            term(p.dom, 1);
            out += " -> ";
            scope_.emplace_back(p.b.id, "_");
        }
        arg(p.cod);
        unbind();
    }

    void data(const std::string& nm, const Telescope& delta, const Schema& k) {
        out += "data " + nm;
        for (const auto& [x, a] : delta) {
            out += " (";
            Name y = x;
            out += std::string(y.text());
            out += " : ";
            term(a, 0);
            out += ")";
            scope_.emplace_back(x.id, std::string(x.text()));
        }
        unbind(delta.size());
        out += " =";
        if (k->entries.empty()) return;
        bool first = true;
        for (const auto& e : k->entries) {
            out += first ? " " : " | ";
            first = false;
            ctor(e.label, e.c);
        }
    }

private:
    const PrintOptions& opts_;
    bool collecting_ = false;
    std::vector<std::pair<uint64_t, std::string>> scope_;
    std::multimap<uint64_t, std::string> free_;
    std::set<std::string> reserved_;

    bool clashes(const std::string& cand) const {
        if (reserved_.count(cand)) return true;
        for (const auto& [id, t] : scope_)
            if (t == cand) return true;
        return false;
    }

    void open(bool paren) {
        if (paren) out += "(";
    }
    void close(bool paren) {
        if (paren) out += ")";
    }

    void terms_paren(const std::vector<Term>& ts) {
        out += "(";
        for (size_t i = 0; i < ts.size(); ++i) {
            if (i) out += ", ";
            term(ts[i], 0);
        }
        out += ")";
    }

    void span(const Dim& r, const Dim& s) {
        dim(r);
        out += " ~> ";
        dim(s);
    }

    void tube(const Tube& t) {
        out += "[";
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) out += " | ";
            con(t[i].xi);
            out += " -> ";
            bind(t[i].y);
            out += ". ";
            term(t[i].body, 0);
            unbind();
        }
        out += "]";
    }

    void line_terms(const Name& z, const std::vector<Term>& line) {
        out += "[";
        bind(z);
        out += ".";
        for (size_t i = 0; i < line.size(); ++i) {
            out += i ? ", " : " ";
            term(line[i], 0);
        }
        unbind();
        out += "]";
    }

    void schema_ref(const Schema& k) { out += k->name.empty() ? std::string("<schema>") : k->name; }

    void node(const tm::Var& n, int) { name(n.x); }
    void node(const tm::Lam& n, int prec) {
        open(prec > 0);
        out += "fun ";
        bind(n.x);
        out += " => ";
        term(n.body, 0);
        unbind();
        close(prec > 0);
    }
    void node(const tm::App& n, int prec) {
        open(prec > 1);
        term(n.fn, 1);
        out += " ";
        term(n.arg, 2);
        close(prec > 1);
    }
    void node(const tm::Pi& n, int prec) {
        open(prec > 0);
        bool dep = fv::contains(n.cod->fv.tm, n.x.id);
        if (dep) {
            out += "(";
            bind(n.x);
            out += " : ";
            term(n.dom, 0);
            out += ") -> ";
        } else {
            term(n.dom, 1);
            out += " -> ";
            scope_.emplace_back(n.x.id, "_");
        }
        term(n.cod, 0);
        unbind();
        close(prec > 0);
    }
    void node(const tm::Ind& n, int) {
        schema_ref(n.schema);
        if (!n.indices.empty()) terms_paren(n.indices);
    }
    void node(const tm::Intro& n, int) {
        out += n.label;
        if (n.dims.empty() && n.params.empty() && n.args.empty()) return;
        out += "(";
        bool first = true;
        auto sep = [&] {
            if (!first) out += ", ";
            first = false;
        };
        for (const auto& r : n.dims) {
            sep();
            dim(r);
        }
        for (const auto& p : n.params) {
            sep();
            term(p, 0);
        }
        for (const auto& a : n.args) {
            sep();
            term(a, 0);
        }
        out += ")";
    }
    void node(const tm::Fhcom& n, int) {
        out += "fhcom ";
        span(n.r, n.s);
        out += " ";
        term(n.cap, 2);
        out += " ";
        tube(n.tube);
    }
    void node(const tm::Fcoe& n, int) {
        out += "fcoe ";
        line_terms(n.z, n.line);
        out += " ";
        span(n.r, n.s);
        out += " ";
        term(n.body, 2);
    }
    void node(const tm::Fcom& n, int) {
        out += "fcom ";
        line_terms(n.z, n.line);
        out += " ";
        span(n.r, n.s);
        out += " ";
        term(n.cap, 2);
        out += " ";
        tube(n.tube);
    }
    void node(const tm::Hcom& n, int) {
        out += "hcom {";
        term(n.type, 0);
        out += "} ";
        span(n.r, n.s);
        out += " ";
        term(n.cap, 2);
        out += " ";
        tube(n.tube);
    }
    void node(const tm::Coe& n, int) {
        out += "coe {";
        bind(n.z);
        out += ". ";
        term(n.type, 0);
        unbind();
        out += "} ";
        span(n.r, n.s);
        out += " ";
        term(n.body, 2);
    }
    void node(const tm::Com& n, int) {
        out += "com {";
        bind(n.z);
        out += ". ";
        term(n.type, 0);
        unbind();
        out += "} ";
        span(n.r, n.s);
        out += " ";
        term(n.cap, 2);
        out += " ";
        tube(n.tube);
    }
    void node(const tm::Tcoe& n, int) {
        out += "tcoe {";
        bind(n.z);
        out += ". ";
        schema_ref(n.schema);
        unbind();
        out += "} ";
        span(n.r, n.s);
        out += " ";
        term(n.body, 2);
    }
    void node(const tm::Elim& n, int) {
        out += "elim [";
        for (const auto& d : n.deltas) {
            bind(d);
            out += " ";
        }
        bind(n.h);
        out += ". ";
        term(n.motive, 0);
        unbind(n.deltas.size() + 1);
        out += "] ";
        if (!n.deltas.empty()) {
            terms_paren(n.indices);
            out += " ";
        }
        term(n.scrut, 2);
        out += " {";
        for (size_t i = 0; i < n.cases.size(); ++i) {
            const auto& c = n.cases[i];
            out += i ? " | " : " ";
            out += c.label;
            size_t count = 0;
            bool any = !(c.dims.empty() && c.params.empty() && c.recs.empty());
            if (any) out += "(";
            auto b = [&](const Name& x) {
                if (count) out += ", ";
                bind(x);
                ++count;
            };
            for (const auto& x : c.dims) b(x);
            for (const auto& x : c.params) b(x);
            for (const auto& x : c.recs) b(x);
            for (const auto& x : c.results) b(x);
            if (any) out += ")";
            out += " -> ";
            term(c.body, 0);
            unbind(count);
        }
        out += n.cases.empty() ? "}" : " }";
    }
    void node(const tm::PathTy& n, int) {
        out += "path {";
        bind(n.x);
        out += ". ";
        term(n.type, 0);
        unbind();
        out += "} ";
        term(n.left, 2);
        out += " ";
        term(n.right, 2);
    }
    void node(const tm::PLam& n, int prec) {
        open(prec > 0);
        out += "<";
        bind(n.x);
        out += "> ";
        term(n.body, 0);
        unbind();
        close(prec > 0);
    }
    void node(const tm::PApp& n, int prec) {
        open(prec > 1);
        term(n.path, 1);
        out += " @ ";
        dim(n.r);
        close(prec > 1);
    }
    void node(const tm::NatRec& n, int) {
        out += "natrec ";
        term(n.scrut, 2);
        out += " { zero -> ";
        term(n.zero, 0);
        out += " | suc ";
        bind(n.a);
        out += " ";
        bind(n.r);
        out += " -> ";
        term(n.suc, 0);
        unbind(2);
        out += " }";
    }

    void bnode(const bt::Var& n, int) { name(n.p); }
    void bnode(const bt::Intro& n, int) {
        out += n.label;
        if (n.dims.empty() && n.params.empty() && n.args.empty()) return;
        out += "(";
        bool first = true;
        auto sep = [&] {
            if (!first) out += ", ";
            first = false;
        };
        for (const auto& r : n.dims) {
            sep();
            dim(r);
        }
        for (const auto& p : n.params) {
            sep();
            term(p, 0);
        }
        for (const auto& a : n.args) {
            sep();
            bterm(a, 0);
        }
        out += ")";
    }
    void bnode(const bt::Fhcom& n, int) {
        out += "fhcom ";
        if (!n.indices.empty()) {
            out += "@";
            terms_paren(n.indices);
            out += " ";
        }
        span(n.r, n.s);
        out += " ";
        bterm(n.cap, 2);
        out += " [";
        for (size_t i = 0; i < n.tube.size(); ++i) {
            if (i) out += " | ";
            con(n.tube[i].xi);
            out += " -> ";
            bind(n.tube[i].y);
            out += ". ";
            bterm(n.tube[i].body, 0);
            unbind();
        }
        out += "]";
    }
    void bnode(const bt::Fcoe& n, int) {
        out += "fcoe ";
        line_terms(n.z, n.indices);
        out += " ";
        span(n.r, n.s);
        out += " ";
        bterm(n.body, 2);
    }
    void bnode(const bt::Lam& n, int prec) {
        open(prec > 0);
        out += "fun ";
        bind(n.a);
        out += " => ";
        bterm(n.body, 0);
        unbind();
        close(prec > 0);
    }
    void bnode(const bt::App& n, int prec) {
        open(prec > 1);
        bterm(n.fn, 1);
        out += " ";
        term(n.arg, 2);
        close(prec > 1);
    }
    void bnode(const bt::NatRec& n, int) {
        out += "natrec ";
        term(n.scrut, 2);
        out += " { zero -> ";
        bterm(n.zero, 0);
        out += " | suc ";
        bind(n.a);
        out += " ";
        bind(n.p);
        out += " -> ";
        bterm(n.suc, 0);
        unbind(2);
        out += " }";
    }

    void ctor(const std::string& label, const Constructor& c) {
        out += label;
        size_t bound = 0;
        if (!c.dims.empty()) {
            out += "(";
            for (size_t i = 0; i < c.dims.size(); ++i) {
                if (i) out += " ";
                bind(c.dims[i]);
            }
            out += ")";
        }
        std::vector<std::pair<uint64_t, std::string>> dims_scope(scope_.end() - c.dims.size(), scope_.end());
        unbind(c.dims.size());
        if (!c.params.empty()) {
            out += " {";
            for (size_t i = 0; i < c.params.size(); ++i) {
                if (i) out += ", ";
                const auto& [x, a] = c.params[i];
                // The binder text is printed before its type is, but the type
                // may not refer to it, so bind after printing the type.
                std::string save = out;
                out.clear();
                term(a, 0);
                std::string ty = out;
                out = save;
                bind(x);
                ++bound;
                out += " : " + ty;
            }
            out += "}";
        }
        if (!c.args.empty()) {
            out += " <";
            for (size_t i = 0; i < c.args.size(); ++i) {
                if (i) out += ", ";
                std::string save = out;
                out.clear();
                arg(c.args[i].second);
                std::string ty = out;
                out = save;
                out += std::string(c.args[i].first.text()) + " : " + ty;
            }
            out += ">";
        }
        if (!c.indices.empty()) {
            out += " @ ";
            terms_paren(c.indices);
        }
        if (!c.boundary.empty()) {
            for (const auto& a : c.args) scope_.emplace_back(a.first.id, std::string(a.first.text()));
            for (const auto& d : dims_scope) scope_.push_back(d);
            out += " [";
            for (size_t i = 0; i < c.boundary.size(); ++i) {
                if (i) out += " | ";
                con(c.boundary[i].xi);
                out += " -> ";
                bterm(c.boundary[i].body, 0);
            }
            out += "]";
            unbind(c.args.size() + dims_scope.size());
        }
        unbind(bound);
    }
};

template <class F>
std::string two_pass(const PrintOptions& opts, F&& f) {
    Printer p(opts);
    p.collect_mode(true);
    f(p);
    p.collect_mode(false);
    p.reserve_collected();
    p.out.clear();
    f(p);
    return p.out;
}

}  // namespace

std::string print(const Dim& r) {
    Printer p({});
    p.dim(r);
    return p.out;
}

std::string print(const Constraint& c) {
    Printer p({});
    p.con(c);
    return p.out;
}

std::string print(const Term& t, const PrintOptions& opts) {
    return two_pass(opts, [&](Printer& p) { p.term(t, 0); });
}

std::string print(const BTerm& m) {
    return two_pass({}, [&](Printer& p) { p.bterm(m, 0); });
}

std::string print(const ArgType& a) {
    return two_pass({}, [&](Printer& p) { p.arg(a); });
}

std::string print_data(const std::string& name, const Telescope& delta, const Schema& k,
                       const PrintOptions& opts) {
    return two_pass(opts, [&](Printer& p) { p.data(name, delta, k); });
}

}  // namespace cubind
