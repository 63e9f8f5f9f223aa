#pragma once

#include <optional>
#include <stdexcept>

#include "cubind/subst.hpp"

namespace cubind {

bool constraint_satisfied(const Constraint& c);

// Constants are moved to the right so (0=x) and (x=0) are treated alike.
Constraint normalize(const Constraint& c);

bool ctx_valid(const ConstraintCtx& xi);

// nullopt means the constraint is unsatisfiable.
std::optional<DimSubst> constraint_mgu(const Constraint& c);

// Most general unifier of a whole list, composed left to right.
std::optional<DimSubst> constraints_mgu(const ConstraintCtx& cs);

struct UnknownLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int height(const ConstrList& k, std::string_view label);
int height(const ConstrList& k, const BTerm& m);

}  // namespace cubind
