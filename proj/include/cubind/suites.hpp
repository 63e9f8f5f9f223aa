#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cubind/checker.hpp"
#include "cubind/source.hpp"
#include "cubind/stdlib.hpp"

namespace cubind {

struct SuiteOptions {
    EvalOptions eval;
    uint64_t fuel = 100000;
    uint32_t seed = 20240611;
};

struct SuiteResult {
    SuiteResult() = default;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    std::string name;
    size_t cases = 0;
    std::vector<std::string> failures;
    // One entry per case, used to compare runs with and without optimizations.
    std::vector<std::string> observations;
    // Recorded but not failures.
    std::vector<std::string> notes;

    bool ok() const { return cases > 0 && failures.empty(); }
    std::string summary() const;
};

// Closed terms of nat and bool built from intro, hcom, coe, com, fcom and elim.
struct TypedTerm {
    Term term;
    Term type;
};
std::vector<TypedTerm> canonicity_corpus(size_t n, uint32_t seed);

struct Mutation {
    std::string name;
    CheckError::Kind expected;
    std::function<CheckResult()> run;
};
std::vector<Mutation> mutation_corpus();

// Parses and checks a whole source file; the first error wins.
CheckResult check_source(const std::string& text, const CheckOptions& opts);

// A schema whose boundary uses natrec; needs the natrec extension.
std::string natrec_demo_source();

SuiteResult suite_canonicity(const SuiteOptions& o);
SuiteResult suite_arithmetic(const SuiteOptions& o);
SuiteResult suite_boundary(const SuiteOptions& o);
SuiteResult suite_kan(const SuiteOptions& o);
SuiteResult suite_beta(const SuiteOptions& o);
SuiteResult suite_coherence(const SuiteOptions& o);
SuiteResult suite_mutation(const SuiteOptions& o);
SuiteResult suite_validity(const SuiteOptions& o);
SuiteResult suite_optimization(const SuiteOptions& o);
SuiteResult suite_natrec(const SuiteOptions& o);

const std::vector<std::string>& suite_names();
// Throws std::out_of_range for unknown names.
SuiteResult run_suite(const std::string& name, const SuiteOptions& o);

// Closed values used to fill constructor arguments; nullptr if none is known.
Term sample_value(const Term& type, int depth = 0);
// An element of the decl's type built from a boundaryless constructor.
Term sample_element(const NamedDecl& d);

}  // namespace cubind
