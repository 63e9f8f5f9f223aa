#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubind/interpretation.hpp"

namespace cubind {

struct CheckOptions {
    bool ext_natrec = false;
    bool ext_paths = false;
    uint64_t conv_fuel = 200000;
};

struct CheckError : std::runtime_error {
    enum class Kind { Scope, Arity, Validity, LabelOrder, Conversion, Unsupported };
    Kind kind;
    std::string location;
    std::string rule;
    std::string message;

    CheckError(Kind k, std::string loc, std::string rule_name, std::string msg);
};

const char* kind_name(CheckError::Kind k);

// Scope of a judgment. Types in `vars` may mention earlier entries.
struct CheckCtx {
    std::vector<Name> dims;
    Telescope vars;

    CheckCtx with_dim(const Name& x) const;
    CheckCtx with_var(const Name& x, const Term& type) const;
    const Term* lookup(const Name& x) const;
    bool has_dim(const Name& x) const;
};

using CheckResult = std::optional<CheckError>;

CheckResult check_telescope(const CheckCtx& ctx, const Telescope& tel, const CheckOptions& opts = {});
CheckResult check_constrs(const CheckCtx& ctx, const Telescope& delta, const Schema& k,
                          const CheckOptions& opts = {});
// Checks one constructor against the schema prefix that precedes it.
CheckResult check_constructor(const CheckCtx& ctx, const Telescope& delta, const Schema& prefix,
                              const std::string& label, const Constructor& c, const CheckOptions& opts = {});
// `theta` is the ambient argument context; `prefix` supplies the labels.
CheckResult check_boundary_term(const CheckCtx& ctx, const Telescope& delta, const Schema& prefix,
                                const ArgCtx& theta, const BTerm& m, const ArgType& expected,
                                const CheckOptions& opts = {});
CheckResult check_elim_list(const CheckCtx& ctx, const Telescope& delta, const Schema& k, const Motive& motive,
                            const ElimList& cases, const CheckOptions& opts = {});
CheckResult check_type(const CheckCtx& ctx, const Term& a, const CheckOptions& opts = {});
CheckResult check_term(const CheckCtx& ctx, const Term& t, const Term& expected, const CheckOptions& opts = {});

struct InferResult {
    Term type;
    std::optional<CheckError> error;
};
InferResult infer_term(const CheckCtx& ctx, const Term& t, const CheckOptions& opts = {});

// Algorithmic conversion: weak-head evaluation with free variables blocking,
// structural comparison, eta for functions and paths. The context supplies
// the types needed for endpoints of neutral paths.
bool convert(const CheckCtx& ctx, const Term& a, const Term& b, const CheckOptions& opts = {});

}  // namespace cubind
