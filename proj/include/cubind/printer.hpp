#pragma once

#include <string>
#include <unordered_map>

#include "cubind/syntax.hpp"

namespace cubind {

struct PrintOptions {
    // Terms that should be printed by name (definitions inlined at parse time).
    const std::unordered_map<const TermNode*, std::string>* defs = nullptr;
};

std::string print(const Dim& r);
std::string print(const Constraint& c);
std::string print(const Term& t, const PrintOptions& opts = {});
std::string print(const BTerm& m);
std::string print(const ArgType& a);
std::string print_data(const std::string& name, const Telescope& delta, const Schema& k,
                       const PrintOptions& opts = {});

}  // namespace cubind
