#pragma once

#include <gtest/gtest.h>

#include <random>

#include "cubind/printer.hpp"
#include "cubind/stdlib.hpp"

namespace cubind::test {

// Parses against the prelude, with `dims` bound as free dimensions.
inline Term parse(const std::string& text) {
    static Env env = prelude();
    return parse_term(text, env);
}

// Random terms over nat built from a few variables and dimensions.
class TermGen {
public:
    TermGen(uint32_t seed, std::vector<Name> vars, std::vector<Name> dims)
        : rng_(seed), vars_(std::move(vars)), dims_(std::move(dims)) {}

    Dim dim() {
        unsigned k = pick(static_cast<unsigned>(dims_.size() + 2));
        if (k < 2) return Dim::constant(k);
        return Dim::of(dims_[k - 2]);
    }

    Term term(int depth) {
        if (depth <= 0 || pick(4) == 0) {
            if (!vars_.empty() && pick(2)) return mk::var(vars_[pick(static_cast<unsigned>(vars_.size()))]);
            return numeral(pick(3));
        }
        switch (pick(6)) {
            case 0: {
                Name x = fresh_name("x");
                vars_.push_back(x);
                Term body = term(depth - 1);
                vars_.pop_back();
                return mk::app(mk::lam(x, body), term(depth - 1));
            }
            case 1: return mk::coe(fresh_name("z"), nat_type(), dim(), dim(), term(depth - 1));
            case 2: {
                // Tubes are valid and agree with the cap, so the term stays well typed.
                Term cap = term(depth - 1);
                Name y = fresh_name("y"), y2 = fresh_name("y");
                Dim r = dim(), s = dim();
                if (!dims_.empty() && pick(2)) {
                    Dim x = Dim::of(dims_[pick(static_cast<unsigned>(dims_.size()))]);
                    return mk::hcom(nat_type(), r, s, cap, {Face{{x, Dim::zero()}, y, cap}, Face{{x, Dim::one()}, y2, cap}});
                }
                Dim d = dim();
                return mk::hcom(nat_type(), r, s, cap, {Face{{d, d}, y, cap}});
            }
            case 3: return nat_add(term(depth - 1), term(depth - 1));
            case 4: return mk::intro(decl("nat").schema, "suc", {}, {}, {term(depth - 1)});
            default: return circle_to_nat(mk::intro(decl("circle").schema, "lp", {dim()}, {}, {}), pick(3));
        }
    }

    unsigned pick(unsigned n) { return static_cast<unsigned>(rng_() % n); }

private:
    std::mt19937 rng_;
    std::vector<Name> vars_;
    std::vector<Name> dims_;
};

}  // namespace cubind::test
