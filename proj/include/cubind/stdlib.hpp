#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cubind/evaluator.hpp"
#include "cubind/source.hpp"

namespace cubind {

struct SmokeProgram {
    std::string name;
    Term term;
    Term type;
    ObservationTree expected;
};

// Eliminator sugar: a motive over (δ, h) and one case per constructor.
struct ElimTemplate {
    Motive motive;
    ElimList cases;
};

struct NamedDecl {
    std::string name;
    Telescope delta;
    Schema schema;
    ElimTemplate elim;
    std::vector<SmokeProgram> smoke;
    // Other catalog entries mentioned by the schema, in dependency order.
    std::vector<std::string> deps;

    Term type(std::vector<Term> indices = {}) const { return mk::ind(delta, schema, std::move(indices)); }
};

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const std::vector<NamedDecl>& catalog();
// Throws std::out_of_range for unknown names.
const NamedDecl& decl(const std::string& name);

Term derive_eliminator(const NamedDecl& d, const Motive& motive, std::vector<Term> indices, Term scrut,
                       ElimList cases);
// The decl's own template.
Term derive_eliminator(const NamedDecl& d, std::vector<Term> indices, Term scrut);

// Parameterized schemas, instantiated at the meta level.
NamedDecl make_w(const std::string& name, const Term& a_type, const Name& a, const Term& b_family);
NamedDecl make_wq(const std::string& name, const Term& a_type, const Name& a, const Term& b_family,
                  const Term& c_type, const Term& f0, const Term& f1);
NamedDecl make_trunc(const std::string& name, const Term& a_type);
NamedDecl make_hub(const std::string& name, const Term& a_type, const NamedDecl& sphere);
NamedDecl make_loc(const std::string& name, const Term& a_type, const Term& i_type, const Name& i,
                   const Term& s_family, const Term& t_family, const Term& f);
NamedDecl make_id(const std::string& name, const Term& a_type);

// The decl's template packaged as a checked function, Π δ. Π m. D[δ][m/h].
std::pair<Term, Term> eliminator_def(const NamedDecl& d);
// The decl with its dependencies, eliminator and smoke programs as a source file.
SourceFile stdlib_file(const NamedDecl& d);
// Every catalog schema, with labels resolving to the first entry that declares them.
Env prelude();

// Small programs over the catalog.
Term nat_type();
Term bool_type();
Term numeral(unsigned n);
Term tt();
Term ff();
Term nat_add(const Term& m, const Term& n);
Term nat_mul(const Term& m, const Term& n);
Term bool_not(const Term& b);
Term bool_and(const Term& a, const Term& b);
Term bool_or(const Term& a, const Term& b);
ObservationTree numeral_tree(unsigned n);
// Circle to nat sending base to `n` and lp to the constant loop.
Term circle_to_nat(const Term& m, unsigned n);
// Id(nat) ↔ Path(nat) under the path extension.
Term path_to_id(const Term& a, const Term& b, const Term& p);
Term id_to_path(const Term& a, const Term& b, const Term& q);
// J at nat into nat: Idelim [a b h. nat] (M, N) q { refl(a) -> R }
Term id_elim_nat(const Term& m, const Term& n, const Term& q, const Name& a, const Term& r);

}  // namespace cubind
