#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cubind {

// Every binder and variable carries a globally unique id; the hint is only
// used for printing. Term and dimension variables share one supply.
struct Name {
    uint64_t id = 0;
    const std::string* hint = nullptr;

    std::string_view text() const;
    friend bool operator==(const Name& a, const Name& b) { return a.id == b.id; }
    friend bool operator!=(const Name& a, const Name& b) { return a.id != b.id; }
};

Name fresh_name(std::string_view hint);
Name fresh_name(const Name& like);
Name fresh_dim();

struct Dim {
    enum class Kind : uint8_t { Zero, One, Var };
    Kind kind = Kind::Zero;
    Name var;

    static Dim zero() { return Dim{Kind::Zero, {}}; }
    static Dim one() { return Dim{Kind::One, {}}; }
    static Dim of(const Name& x) { return Dim{Kind::Var, x}; }
    static Dim constant(bool b) { return b ? one() : zero(); }

    bool is_var() const { return kind == Kind::Var; }
    bool is_const() const { return kind != Kind::Var; }
    friend bool operator==(const Dim& a, const Dim& b) {
        return a.kind == b.kind && (a.kind != Kind::Var || a.var == b.var);
    }
    friend bool operator!=(const Dim& a, const Dim& b) { return !(a == b); }
};

struct Constraint {
    Dim lhs, rhs;
};
using ConstraintCtx = std::vector<Constraint>;

// Sorted id sets of free term, dimension and boundary variables.
struct FreeVars {
    std::vector<uint64_t> tm, dm, bv;
    bool closed() const { return tm.empty() && dm.empty() && bv.empty(); }
};

struct TermNode;
struct BNode;
struct ArgNode;
struct ConstrList;
using Term = std::shared_ptr<const TermNode>;
using BTerm = std::shared_ptr<const BNode>;
using ArgType = std::shared_ptr<const ArgNode>;
using Schema = std::shared_ptr<const ConstrList>;

using Telescope = std::vector<std::pair<Name, Term>>;
using ArgCtx = std::vector<std::pair<Name, ArgType>>;

struct Face {
    Constraint xi;
    Name y;
    Term body;
};
using Tube = std::vector<Face>;

struct ElimCase {
    std::string label;
    std::vector<Name> dims, params, recs, results;
    Term body;
};
using ElimList = std::vector<ElimCase>;

namespace tm {
struct Var { Name x; };
struct Lam { Name x; Term body; };
struct App { Term fn, arg; };
struct Pi { Name x; Term dom, cod; };
struct Ind { Telescope delta; Schema schema; std::vector<Term> indices; };
struct Intro {
    Schema schema;
    std::string label;
    std::vector<Dim> dims;
    std::vector<Term> params, args;
};
struct Fhcom { Dim r, s; Term cap; Tube tube; };
struct Fcoe { Name z; std::vector<Term> line; Dim r, s; Term body; };
struct Fcom { Name z; std::vector<Term> line; Dim r, s; Term cap; Tube tube; };
struct Hcom { Term type; Dim r, s; Term cap; Tube tube; };
struct Coe { Name z; Term type; Dim r, s; Term body; };
struct Com { Name z; Term type; Dim r, s; Term cap; Tube tube; };
struct Tcoe { Name z; Telescope delta; Schema schema; Dim r, s; Term body; };
struct Elim {
    std::vector<Name> deltas;
    Name h;
    Term motive;
    std::vector<Term> indices;
    Term scrut;
    ElimList cases;
};
struct PathTy { Name x; Term type, left, right; };
struct PLam { Name x; Term body; };
struct PApp { Term path; Dim r; };
struct NatRec { Term scrut, zero; Name a, r; Term suc; };
}  // namespace tm

struct TermNode {
    using V = std::variant<tm::Var, tm::Lam, tm::App, tm::Pi, tm::Ind, tm::Intro, tm::Fhcom, tm::Fcoe,
                           tm::Fcom, tm::Hcom, tm::Coe, tm::Com, tm::Tcoe, tm::Elim, tm::PathTy,
                           tm::PLam, tm::PApp, tm::NatRec>;
    V v;
    FreeVars fv;

    template <class T> const T* as() const { return std::get_if<T>(&v); }
    template <class T> bool is() const { return std::holds_alternative<T>(v); }
};

struct BFace {
    Constraint xi;
    Name y;
    BTerm body;
};

namespace bt {
struct Var { Name p; };
struct Intro {
    std::string label;
    std::vector<Dim> dims;
    std::vector<Term> params;
    std::vector<BTerm> args;
};
struct Fhcom { std::vector<Term> indices; Dim r, s; BTerm cap; std::vector<BFace> tube; };
struct Fcoe { Name z; std::vector<Term> indices; Dim r, s; BTerm body; };
struct Lam { Name a; BTerm body; };
struct App { BTerm fn; Term arg; };
struct NatRec { Term scrut; BTerm zero; Name a, p; BTerm suc; };
}  // namespace bt

struct BNode {
    using V = std::variant<bt::Var, bt::Intro, bt::Fhcom, bt::Fcoe, bt::Lam, bt::App, bt::NatRec>;
    V v;
    FreeVars fv;

    template <class T> const T* as() const { return std::get_if<T>(&v); }
};

namespace at {
struct SelfAt { std::vector<Term> indices; };
struct Pi { Name b; Term dom; ArgType cod; };
}  // namespace at

struct ArgNode {
    std::variant<at::SelfAt, at::Pi> v;
    FreeVars fv;

    template <class T> const T* as() const { return std::get_if<T>(&v); }
};

struct BoundaryFace {
    Constraint xi;
    BTerm body;
};

struct Constructor {
    std::vector<Name> dims;
    Telescope params;
    std::vector<Term> indices;
    ArgCtx args;
    std::vector<BoundaryFace> boundary;
};

struct ConstrEntry {
    std::string label;
    Constructor c;
};

struct ConstrList {
    std::string name;  // printing only; ignored by equality
    std::vector<ConstrEntry> entries;
    FreeVars fv;

    const Constructor* find(std::string_view label) const;
    int index_of(std::string_view label) const;
};

namespace mk {
Term var(const Name& x);
Term lam(const Name& x, Term body);
Term app(Term fn, Term arg);
Term apps(Term fn, const std::vector<Term>& args);
Term pi(const Name& x, Term dom, Term cod);
Term arrow(Term dom, Term cod);
Term ind(Telescope delta, Schema schema, std::vector<Term> indices);
Term intro(Schema schema, std::string label, std::vector<Dim> dims, std::vector<Term> params,
           std::vector<Term> args);
Term fhcom(Dim r, Dim s, Term cap, Tube tube);
Term fcoe(const Name& z, std::vector<Term> line, Dim r, Dim s, Term body);
Term fcom(const Name& z, std::vector<Term> line, Dim r, Dim s, Term cap, Tube tube);
Term hcom(Term type, Dim r, Dim s, Term cap, Tube tube);
Term coe(const Name& z, Term type, Dim r, Dim s, Term body);
Term com(const Name& z, Term type, Dim r, Dim s, Term cap, Tube tube);
Term tcoe(const Name& z, Telescope delta, Schema schema, Dim r, Dim s, Term body);
Term elim(std::vector<Name> deltas, const Name& h, Term motive, std::vector<Term> indices, Term scrut,
          ElimList cases);
Term path(const Name& x, Term type, Term left, Term right);
Term plam(const Name& x, Term body);
Term papp(Term p, Dim r);
Term natrec(Term scrut, Term zero, const Name& a, const Name& r, Term suc);
Term node(TermNode::V v);

BTerm bvar(const Name& p);
BTerm bintro(std::string label, std::vector<Dim> dims, std::vector<Term> params, std::vector<BTerm> args);
BTerm bfhcom(std::vector<Term> indices, Dim r, Dim s, BTerm cap, std::vector<BFace> tube);
BTerm bfcoe(const Name& z, std::vector<Term> indices, Dim r, Dim s, BTerm body);
BTerm blam(const Name& a, BTerm body);
BTerm bapp(BTerm fn, Term arg);
BTerm bnatrec(Term scrut, BTerm zero, const Name& a, const Name& p, BTerm suc);
BTerm bnode(BNode::V v);

ArgType self_at(std::vector<Term> indices = {});
ArgType arg_pi(const Name& b, Term dom, ArgType cod);

Schema schema(std::string name, std::vector<ConstrEntry> entries);
}  // namespace mk

// Free-variable bookkeeping shared by the constructors above and the
// substitution module.
namespace fv {
void unite(std::vector<uint64_t>& into, const std::vector<uint64_t>& from);
void erase(std::vector<uint64_t>& v, uint64_t id);
bool contains(const std::vector<uint64_t>& v, uint64_t id);
bool intersects(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b);
void add(FreeVars& into, const FreeVars& from);
void add_dim(FreeVars& into, const Dim& r);
void add_constraint(FreeVars& into, const Constraint& c);
FreeVars of_telescope(const Telescope& tel);
FreeVars of_constructor(const Constructor& c);
FreeVars of_cases(const ElimList& cases);
}  // namespace fv

}  // namespace cubind
