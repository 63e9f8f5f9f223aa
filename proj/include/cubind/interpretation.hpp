#pragma once

#include <stdexcept>

#include "cubind/subst.hpp"

namespace cubind {

// δ.A
struct Family {
    std::vector<Name> deltas;
    Term body;
};

// δ.h.D, also used for δ.h.R maps.
struct Motive {
    std::vector<Name> deltas;
    Name h;
    Term body;
};

struct InterpError : std::logic_error {
    using std::logic_error::logic_error;
};

Term tyatty(const ArgType& b, const Family& fam);
std::vector<Term> tyatty(const ArgCtx& theta, const Family& fam);
Term tyatty_dep(const ArgType& b, const Motive& mot, const Term& n);

Term insttm(const ArgCtx& theta, const BTerm& m, const Schema& k, const std::vector<Term>& ns);
Term insttm_dep(const ArgCtx& theta, const BTerm& m, const Schema& k, const ElimList& cases,
                const Motive& mot, const std::vector<Term>& ns, const std::vector<Term>& ss);

Term func_action(const ArgType& b, const Motive& map, const Term& m);

std::vector<Term> mcoe(const Name& z, const Telescope& gamma, const Dim& r, const Dim& s,
                       const std::vector<Term>& ms);

const ElimCase* find_case(const ElimList& cases, std::string_view label);

// R[r/x][P/γ][N/η][S/ρ] for one elimination case.
Term instantiate_case(const ElimCase& c, const std::vector<Dim>& dims, const std::vector<Term>& params,
                      const std::vector<Term>& recs, const std::vector<Term>& results);

}  // namespace cubind
