#include <cctype>

#include "cubind/printer.hpp"
#include "cubind/source.hpp"

namespace cubind {

void Env::add_data(const DataInfo& d, bool override_labels) {
    data[d.name] = d;
    for (const auto& e : d.schema->entries)
        if (override_labels || !labels.count(e.label)) labels[e.label] = d.schema;
}

namespace {

struct Token {
    enum class Kind { Ident, Sym, End };
    Kind kind;
    std::string text;
    SrcPos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    SrcPos p;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++p.line;
                p.col = 1;
            } else {
                ++p.col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
            while (i < s.size() && s[i] != '\n') adv(1);
            continue;
        }
        SrcPos start = p;
        if (ident_start(c) || std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Token::Kind::Ident, s.substr(i, j - i), start});
            adv(j - i);
            continue;
        }
        static const char* two[] = {"->", "=>", "~>"};
        bool matched = false;
        for (const char* t : two)
            if (s.compare(i, 2, t) == 0) {
                out.push_back({Token::Kind::Sym, t, start});
                adv(2);
                matched = true;
                break;
            }
        if (matched) continue;
        if (std::string("()[]{}<>,.|=@:").find(c) != std::string::npos) {
            out.push_back({Token::Kind::Sym, std::string(1, c), start});
            adv(1);
            continue;
        }
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", p});
    return out;
}

const char* kKeywords[] = {"fun",  "fhcom", "fcoe", "fcom", "hcom",   "coe",  "com",  "tcoe", "elim",   "path",
                           "natrec", "data", "def",  "dim",  "eval", "observe", "trace", "self", "expect"};

bool is_keyword(const std::string& s) {
    for (const char* k : kKeywords)
        if (s == k) return true;
    return false;
}

class Parser {
public:
    Parser(std::vector<Token> toks, Env& env) : t_(std::move(toks)), env_(env) {}

    SourceFile file() {
        SourceFile f;
        while (!at_end()) f.decls.push_back(decl());
        return f;
    }

    Term whole_term() {
        Term t = term();
        if (!at_end()) fail("unexpected '" + peek().text + "'");
        return t;
    }

    ObservationTree whole_tree() {
        ObservationTree o = tree();
        if (!at_end()) fail("unexpected '" + peek().text + "'");
        return o;
    }

private:
    std::vector<Token> t_;
    size_t i_ = 0;
    Env& env_;
    std::vector<std::pair<std::string, Name>> vars_, dims_, bvars_;

    // ---- tokens ------------------------------------------------------------

    const Token& peek(size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool is(const char* s, size_t k = 0) const { return peek(k).kind != Token::Kind::End && peek(k).text == s; }
    bool is_sym(const char* s, size_t k = 0) const { return peek(k).kind == Token::Kind::Sym && peek(k).text == s; }
    bool accept(const char* s) {
        if (!is(s)) return false;
        ++i_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }
    void expect(const char* s) {
        if (!accept(s)) fail(std::string("expected '") + s + "', found '" + (at_end() ? "end of input" : peek().text) + "'");
    }
    std::string ident() {
        if (peek().kind != Token::Kind::Ident || is_keyword(peek().text) ||
            std::isdigit(static_cast<unsigned char>(peek().text[0])))
            fail("expected an identifier, found '" + (at_end() ? std::string("end of input") : peek().text) + "'");
        return t_[i_++].text;
    }

    // ---- scopes ------------------------------------------------------------

    template <class F>
    auto with(std::vector<std::pair<std::string, Name>>& scope, const std::vector<std::pair<std::string, Name>>& add,
              F f) {
        size_t n = scope.size();
        scope.insert(scope.end(), add.begin(), add.end());
        struct Pop {
            std::vector<std::pair<std::string, Name>>& s;
            size_t n;
            ~Pop() { s.resize(n); }
        } pop{scope, n};
        return f();
    }

    static const Name* find(const std::vector<std::pair<std::string, Name>>& scope, const std::string& s) {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == s) return &it->second;
        return nullptr;
    }

    Name binder(const std::string& s) { return fresh_name(s); }

    // ---- dimensions --------------------------------------------------------

    Dim dim() {
        if (accept("0")) return Dim::zero();
        if (accept("1")) return Dim::one();
        SrcPos p = peek().pos;
        std::string s = ident();
        if (const Name* n = find(dims_, s)) return Dim::of(*n);
        for (const auto& d : env_.dims)
            if (d.text() == s) return Dim::of(d);
        throw ParseError(p, "unknown dimension " + s);
    }

    Constraint constraint() {
        Dim l = dim();
        expect("=");
        return Constraint{l, dim()};
    }

    void span(Dim& r, Dim& s) {
        r = dim();
        expect("~>");
        s = dim();
    }

    // ---- terms -------------------------------------------------------------

    Term term() {
        if (accept("fun")) {
            std::string x = ident();
            expect("=>");
            Name n = binder(x);
            Term body = with(vars_, {{x, n}}, [&] { return term(); });
            return mk::lam(n, body);
        }
        if (is_sym("<") && peek(1).kind == Token::Kind::Ident && is_sym(">", 2)) {
            ++i_;
            std::string x = ident();
            expect(">");
            Name n = binder(x);
            Term body = with(dims_, {{x, n}}, [&] { return term(); });
            return mk::plam(n, body);
        }
        if (is_sym("(") && peek(1).kind == Token::Kind::Ident && is_sym(":", 2)) {
            ++i_;
            std::string x = ident();
            expect(":");
            Term dom = term();
            expect(")");
            expect("->");
            Name n = binder(x);
            Term cod = with(vars_, {{x, n}}, [&] { return term(); });
            return mk::pi(n, dom, cod);
        }
        Term a = app();
        if (accept("->")) return mk::pi(fresh_name("_"), a, term());
        return a;
    }

    bool atom_start() const {
        const Token& k = peek();
        if (k.kind == Token::Kind::End) return false;
        if (k.kind == Token::Kind::Sym) return k.text == "(";
        if (k.text == "fun" || k.text == "data" || k.text == "def" || k.text == "dim" || k.text == "eval" ||
            k.text == "observe" || k.text == "trace" || k.text == "expect" || k.text == "self")
            return false;
        return true;
    }

    Term app() {
        Term f = atom();
        for (;;) {
            if (accept("@")) {
                f = mk::papp(f, dim());
                continue;
            }
            if (!atom_start()) return f;
            f = mk::app(f, atom());
        }
    }

    std::vector<Term> term_list() {
        std::vector<Term> out;
        expect("(");
        if (accept(")")) return out;
        do out.push_back(term());
        while (accept(","));
        expect(")");
        return out;
    }

    Tube tube() {
        Tube out;
        expect("[");
        if (accept("]")) return out;
        do {
            Constraint c = constraint();
            expect("->");
            std::string y = ident();
            expect(".");
            Name n = binder(y);
            Term body = with(dims_, {{y, n}}, [&] { return term(); });
            out.push_back(Face{c, n, body});
        } while (accept("|"));
        expect("]");
        return out;
    }

    std::pair<Name, std::vector<Term>> index_line() {
        expect("[");
        std::string z = ident();
        expect(".");
        Name n = binder(z);
        std::vector<Term> ts = with(dims_, {{z, n}}, [&] {
            std::vector<Term> out;
            if (is_sym("]")) return out;
            do out.push_back(term());
            while (accept(","));
            return out;
        });
        expect("]");
        return {n, ts};
    }

    const DataInfo& data_named(const std::string& s, SrcPos p) {
        auto it = env_.data.find(s);
        if (it == env_.data.end()) throw ParseError(p, "unknown type " + s);
        return it->second;
    }

    const Constructor& ctor_of(const Schema& k, const std::string& label) {
        const Constructor* c = k->find(label);
        if (!c) fail("unknown constructor " + label);
        return *c;
    }

    Term atom() {
        SrcPos p = peek().pos;
        if (accept("(")) {
            Term t = term();
            expect(")");
            return t;
        }
        if (accept("fhcom")) {
            Dim r, s;
            span(r, s);
            Term cap = atom();
            return mk::fhcom(r, s, cap, tube());
        }
        if (accept("fcoe")) {
            auto [z, line] = index_line();
            Dim r, s;
            span(r, s);
            return mk::fcoe(z, line, r, s, atom());
        }
        if (accept("fcom")) {
            auto [z, line] = index_line();
            Dim r, s;
            span(r, s);
            Term cap = atom();
            return mk::fcom(z, line, r, s, cap, tube());
        }
        if (accept("hcom")) {
            expect("{");
            Term a = term();
            expect("}");
            Dim r, s;
            span(r, s);
            Term cap = atom();
            return mk::hcom(a, r, s, cap, tube());
        }
        if (is("coe") || is("com") || is("path")) {
            std::string kw = t_[i_++].text;
            expect("{");
            std::string z = ident();
            expect(".");
            Name n = binder(z);
            Term a = with(dims_, {{z, n}}, [&] { return term(); });
            expect("}");
            if (kw == "path") {
                Term l = atom();
                return mk::path(n, a, l, atom());
            }
            Dim r, s;
            span(r, s);
            Term body = atom();
            if (kw == "coe") return mk::coe(n, a, r, s, body);
            return mk::com(n, a, r, s, body, tube());
        }
        if (accept("tcoe")) {
            expect("{");
            std::string z = ident();
            expect(".");
            SrcPos dp = peek().pos;
            const DataInfo& d = data_named(ident(), dp);
            expect("}");
            Dim r, s;
            span(r, s);
            return mk::tcoe(binder(z), d.delta, d.schema, r, s, atom());
        }
        if (accept("elim")) return elim();
        if (accept("natrec")) {
            Term scrut = atom();
            expect("{");
            expect("zero");
            expect("->");
            Term z = term();
            expect("|");
            expect("suc");
            std::string a = ident(), r = ident();
            expect("->");
            Name na = binder(a), nr = binder(r);
            Term s = with(vars_, {{a, na}, {r, nr}}, [&] { return term(); });
            expect("}");
            return mk::natrec(scrut, z, na, nr, s);
        }
        std::string s = ident();
        if (const Name* n = find(vars_, s)) return mk::var(*n);
        if (auto it = env_.defs.find(s); it != env_.defs.end()) return it->second;
        if (auto it = env_.labels.find(s); it != env_.labels.end()) return intro(it->second, s);
        if (auto it = env_.data.find(s); it != env_.data.end()) {
            const DataInfo& d = it->second;
            std::vector<Term> idx;
            if (!d.delta.empty()) idx = term_list();
            return mk::ind(d.delta, d.schema, idx);
        }
        throw ParseError(p, "unknown name " + s);
    }

    Term intro(const Schema& k, const std::string& label) {
        const Constructor& c = ctor_of(k, label);
        size_t n = c.dims.size() + c.params.size() + c.args.size();
        std::vector<Dim> ds;
        std::vector<Term> ps, as;
        if (n == 0) return mk::intro(k, label, ds, ps, as);
        expect("(");
        for (size_t j = 0; j < n; ++j) {
            if (j) expect(",");
            if (j < c.dims.size())
                ds.push_back(dim());
            else if (j < c.dims.size() + c.params.size())
                ps.push_back(term());
            else
                as.push_back(term());
        }
        expect(")");
        return mk::intro(k, label, ds, ps, as);
    }

    Term elim() {
        expect("[");
        std::vector<std::string> names;
        while (!is_sym(".")) names.push_back(ident());
        expect(".");
        if (names.empty()) fail("elim motive needs a binder for the scrutinee");
        std::vector<std::pair<std::string, Name>> bs;
        std::vector<Name> deltas;
        for (const auto& s : names) bs.emplace_back(s, binder(s));
        for (size_t j = 0; j + 1 < bs.size(); ++j) deltas.push_back(bs[j].second);
        Name h = bs.back().second;
        Term motive = with(vars_, bs, [&] { return term(); });
        expect("]");
        std::vector<Term> idx;
        if (!deltas.empty()) idx = term_list();
        Term scrut = atom();
        expect("{");
        ElimList cases;
        if (!is_sym("}")) {
            do cases.push_back(elim_case());
            while (accept("|"));
        }
        expect("}");
        return mk::elim(deltas, h, motive, idx, scrut, std::move(cases));
    }

    ElimCase elim_case() {
        SrcPos p = peek().pos;
        ElimCase ec;
        ec.label = ident();
        auto it = env_.labels.find(ec.label);
        if (it == env_.labels.end()) throw ParseError(p, "unknown constructor " + ec.label);
        const Constructor& c = ctor_of(it->second, ec.label);
        size_t n = c.dims.size() + c.params.size() + 2 * c.args.size();
        std::vector<std::pair<std::string, Name>> ds, vs;
        if (n > 0) {
            expect("(");
            for (size_t j = 0; j < n; ++j) {
                if (j) expect(",");
                std::string s = ident();
                Name b = binder(s);
                if (j < c.dims.size()) {
                    ds.emplace_back(s, b);
                    ec.dims.push_back(b);
                } else {
                    vs.emplace_back(s, b);
                    size_t k = j - c.dims.size();
                    if (k < c.params.size())
                        ec.params.push_back(b);
                    else if (k < c.params.size() + c.args.size())
                        ec.recs.push_back(b);
                    else
                        ec.results.push_back(b);
                }
            }
            expect(")");
        }
        expect("->");
        ec.body = with(dims_, ds, [&] { return with(vars_, vs, [&] { return term(); }); });
        return ec;
    }

    // ---- boundary terms ----------------------------------------------------

    BTerm bterm() {
        if (accept("fun")) {
            std::string a = ident();
            expect("=>");
            Name n = binder(a);
            BTerm body = with(vars_, {{a, n}}, [&] { return bterm(); });
            return mk::blam(n, body);
        }
        BTerm f = batom();
        while (atom_start()) f = mk::bapp(f, atom());
        return f;
    }

    BTerm batom() {
        if (accept("(")) {
            BTerm m = bterm();
            expect(")");
            return m;
        }
        if (accept("fhcom")) {
            std::vector<Term> idx;
            if (accept("@")) idx = term_list();
            Dim r, s;
            span(r, s);
            BTerm cap = batom();
            std::vector<BFace> tube;
            expect("[");
            if (!is_sym("]")) {
                do {
                    Constraint c = constraint();
                    expect("->");
                    std::string y = ident();
                    expect(".");
                    Name n = binder(y);
                    BTerm body = with(dims_, {{y, n}}, [&] { return bterm(); });
                    tube.push_back(BFace{c, n, body});
                } while (accept("|"));
            }
            expect("]");
            return mk::bfhcom(idx, r, s, cap, tube);
        }
        if (accept("fcoe")) {
            auto [z, line] = index_line();
            Dim r, s;
            span(r, s);
            return mk::bfcoe(z, line, r, s, batom());
        }
        if (accept("natrec")) {
            Term scrut = atom();
            expect("{");
            expect("zero");
            expect("->");
            BTerm z = bterm();
            expect("|");
            expect("suc");
            std::string a = ident(), r = ident();
            expect("->");
            Name na = binder(a), nr = binder(r);
            BTerm s = with(vars_, {{a, na}}, [&] { return with(bvars_, {{r, nr}}, [&] { return bterm(); }); });
            expect("}");
            return mk::bnatrec(scrut, z, na, nr, s);
        }
        std::string s = ident();
        if (const Name* n = find(bvars_, s)) return mk::bvar(*n);
        if (const Constructor* c = current_ctor(s)) {
            size_t n = c->dims.size() + c->params.size() + c->args.size();
            std::vector<Dim> ds;
            std::vector<Term> ps;
            std::vector<BTerm> as;
            if (n > 0) {
                expect("(");
                for (size_t j = 0; j < n; ++j) {
                    if (j) expect(",");
                    if (j < c->dims.size())
                        ds.push_back(dim());
                    else if (j < c->dims.size() + c->params.size())
                        ps.push_back(term());
                    else
                        as.push_back(bterm());
                }
                expect(")");
            }
            return mk::bintro(s, ds, ps, as);
        }
        // Unknown labels are kept so that the checker can report them.
        std::vector<Dim> ds;
        std::vector<BTerm> as;
        if (accept("(")) {
            do {
                if (is("0") || is("1") || (peek().kind == Token::Kind::Ident && find(dims_, peek().text)))
                    ds.push_back(dim());
                else
                    as.push_back(bterm());
            } while (accept(","));
            expect(")");
        }
        return mk::bintro(s, ds, {}, as);
    }

    // Labels of the data declaration being read, including the current one.
    std::vector<ConstrEntry>* pending_ = nullptr;
    const Constructor* current_ctor(const std::string& label) {
        if (!pending_) return nullptr;
        for (const auto& e : *pending_)
            if (e.label == label) return &e.c;
        return nullptr;
    }

    ArgType argtype() {
        if (accept("self")) {
            std::vector<Term> idx;
            if (is_sym("(")) idx = term_list();
            return mk::self_at(idx);
        }
        if (is_sym("(") && peek(1).kind == Token::Kind::Ident && is_sym(":", 2)) {
            ++i_;
            std::string b = ident();
            expect(":");
            Term dom = term();
            expect(")");
            expect("->");
            Name n = binder(b);
            ArgType cod = with(vars_, {{b, n}}, [&] { return argtype(); });
            return mk::arg_pi(n, dom, cod);
        }
        Term dom = app();
        expect("->");
        return mk::arg_pi(fresh_name("_"), dom, argtype());
    }

    // ---- declarations ------------------------------------------------------

    Decl decl() {
        Decl d;
        d.pos = peek().pos;
        if (accept("data")) {
            d.kind = Decl::Kind::Data;
            d.name = ident();
            std::vector<std::pair<std::string, Name>> scope;
            while (accept("(")) {
                std::string x = ident();
                expect(":");
                Term a = with(vars_, scope, [&] { return term(); });
                expect(")");
                Name n = binder(x);
                d.data.delta.emplace_back(n, a);
                scope.emplace_back(x, n);
            }
            expect("=");
            std::vector<ConstrEntry> entries;
            pending_ = &entries;
            struct Reset {
                std::vector<ConstrEntry>*& p;
                ~Reset() { p = nullptr; }
            } reset{pending_};
            if (!at_end() && !is_decl_start()) {
                do with(vars_, scope, [&] {
                    constructor(entries);
                    return 0;
                });
                while (accept("|"));
            }
            d.data.name = d.name;
            d.data.schema = mk::schema(d.name, std::move(entries));
            env_.add_data(d.data);
            return d;
        }
        if (accept("def")) {
            d.kind = Decl::Kind::Def;
            d.name = ident();
            if (accept(":")) d.type = term();
            expect("=");
            d.term = term();
            env_.defs[d.name] = d.term;
            return d;
        }
        if (accept("dim")) {
            d.kind = Decl::Kind::Dim;
            do {
                Name n = binder(ident());
                d.dims.push_back(n);
                env_.dims.push_back(n);
            } while (peek().kind == Token::Kind::Ident && !is_decl_start());
            return d;
        }
        if (accept("eval")) {
            d.kind = Decl::Kind::Eval;
            d.term = term();
            return d;
        }
        if (accept("trace")) {
            d.kind = Decl::Kind::Trace;
            d.term = term();
            return d;
        }
        if (accept("observe")) {
            d.kind = Decl::Kind::Observe;
            d.term = term();
            expect(":");
            d.type = term();
            if (accept("expect")) d.expect = tree();
            return d;
        }
        fail("expected a declaration, found '" + peek().text + "'");
    }

    bool is_decl_start() const {
        return is("data") || is("def") || is("dim") || is("eval") || is("observe") || is("trace");
    }

    void constructor(std::vector<ConstrEntry>& entries) {
        ConstrEntry e;
        e.label = ident();
        std::vector<std::pair<std::string, Name>> ds, ps, as;
        if (accept("(")) {
            while (!is_sym(")")) {
                std::string x = ident();
                ds.emplace_back(x, binder(x));
                e.c.dims.push_back(ds.back().second);
            }
            expect(")");
        }
        with(dims_, ds, [&] {
            if (accept("{")) {
                do {
                    std::string x = ident();
                    expect(":");
                    Term a = with(vars_, ps, [&] { return term(); });
                    Name n = binder(x);
                    e.c.params.emplace_back(n, a);
                    ps.emplace_back(x, n);
                } while (accept(","));
                expect("}");
            }
            return with(vars_, ps, [&] {
                if (accept("<")) {
                    do {
                        std::string x = ident();
                        expect(":");
                        ArgType a = argtype();
                        Name n = binder(x);
                        e.c.args.emplace_back(n, a);
                        as.emplace_back(x, n);
                    } while (accept(","));
                    expect(">");
                }
                if (accept("@")) e.c.indices = term_list();
                // The constructor is visible in its own boundary so that
                // self-reference reaches the checker as a label-order error.
                entries.push_back(e);
                if (accept("[")) {
                    do {
                        Constraint xi = constraint();
                        expect("->");
                        BTerm m = with(bvars_, as, [&] { return bterm(); });
                        entries.back().c.boundary.push_back(BoundaryFace{xi, m});
                    } while (accept("|"));
                    expect("]");
                }
                return 0;
            });
        });
    }

    ObservationTree tree() {
        ObservationTree o;
        if (peek().kind != Token::Kind::Ident) fail("expected a constructor name");
        o.label = t_[i_++].text;
        if (accept("(")) {
            do o.children.push_back(tree());
            while (accept(","));
            expect(")");
        }
        return o;
    }
};

}  // namespace

SourceFile parse_file(const std::string& text, Env& env) {
    Parser p(lex(text), env);
    return p.file();
}

Term parse_term(const std::string& text, const Env& env) {
    Env copy = env;
    Parser p(lex(text), copy);
    return p.whole_term();
}

ObservationTree parse_tree(const std::string& text) {
    Env env;
    Parser p(lex(text), env);
    return p.whole_tree();
}

std::string print_decl(const Decl& d, const std::vector<std::pair<Term, std::string>>& defs) {
    std::unordered_map<const TermNode*, std::string> names;
    for (const auto& [t, n] : defs) names[t.get()] = n;
    PrintOptions po;
    po.defs = &names;
    switch (d.kind) {
        case Decl::Kind::Data: return print_data(d.name, d.data.delta, d.data.schema, po);
        case Decl::Kind::Def:
            return "def " + d.name + (d.type ? " : " + print(d.type, po) : std::string()) + " = " + print(d.term, po);
        case Decl::Kind::Dim: {
            std::string s = "dim";
            for (const auto& x : d.dims) s += " " + std::string(x.text());
            return s;
        }
        case Decl::Kind::Eval: return "eval " + print(d.term, po);
        case Decl::Kind::Trace: return "trace " + print(d.term, po);
        case Decl::Kind::Observe:
            return "observe " + print(d.term, po) + " : " + print(d.type, po) +
                   (d.expect ? " expect " + d.expect->str() : std::string());
    }
    return {};
}

std::string print_file(const SourceFile& f) {
    std::string out;
    std::vector<std::pair<Term, std::string>> defs;
    for (const auto& d : f.decls) {
        out += print_decl(d, defs) + "\n";
        if (d.kind == Decl::Kind::Def) defs.emplace_back(d.term, d.name);
    }
    return out;
}

}  // namespace cubind
