#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cubind/interpretation.hpp"

namespace cubind {

struct EvalOptions {
    // Trivial coercion at closed inductive types and trivial composition at
    // closed zero-dimensional ones.
    bool opt_closed = false;
};

struct StepResult {
    enum class Kind { IsValue, Steps, Stuck };
    Kind kind = Kind::IsValue;
    Term next;
    std::string reason;

    static StepResult value() { return {}; }
    static StepResult steps(Term t) { return {Kind::Steps, std::move(t), {}}; }
    static StepResult stuck(std::string why) { return {Kind::Stuck, nullptr, std::move(why)}; }
};

struct EvalError : std::runtime_error {
    enum class Kind { Fuel, Stuck, NotObservable, NotCanonical };
    Kind kind;
    EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

constexpr uint64_t kDefaultFuel = 1000000;

// Budget from CUBIND_FUEL if set, else the default.
uint64_t default_fuel();

bool is_value(const Term& t);
StepResult step(const Term& t, const EvalOptions& opts = {});

// Runs step to a value. `steps` (if given) accumulates the number of steps.
Term eval(const Term& t, uint64_t fuel = kDefaultFuel, const EvalOptions& opts = {}, uint64_t* steps = nullptr);

struct Trace {
    std::vector<Term> terms;
    StepResult last;  // IsValue, Stuck, or Steps when the cap was hit
};
Trace trace(const Term& t, size_t max_steps, const EvalOptions& opts = {});

struct ObservationTree {
    std::string label;
    std::vector<ObservationTree> children;

    std::string str() const;
    friend bool operator==(const ObservationTree& a, const ObservationTree& b) {
        return a.label == b.label && a.children == b.children;
    }
    friend bool operator!=(const ObservationTree& a, const ObservationTree& b) { return !(a == b); }
};

// Deep readback at a 0-dimensional, non-indexed, first-order inductive type.
ObservationTree observe(const Term& t, const Term& type, const EvalOptions& opts = {},
                        uint64_t fuel = kDefaultFuel, uint64_t* steps = nullptr);

// Evaluates first-order data everywhere it can, including under the binders
// of fhcom tubes; functions are left alone. Works with free dimensions.
Term normalize(const Term& t, const EvalOptions& opts = {}, uint64_t fuel = kDefaultFuel);

// Whether the closed-type optimizations may fire for this schema.
bool closed_schema(const Schema& k);
bool closed_zero_dim_schema(const Schema& k);

}  // namespace cubind
