#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubind/checker.hpp"
#include "cubind/source.hpp"

namespace cubind {

struct DriverOptions {
    CheckOptions check;
    EvalOptions eval;
    uint64_t fuel = kDefaultFuel;
    size_t trace_max = 1000;
    // When false only checking happens; directives are not run.
    bool execute = true;
};

struct ReportLine {
    std::string directive;
    std::string status;  // ok | error | mismatch
    uint64_t steps = 0;
    std::optional<std::string> value;
    std::vector<std::string> trace;
    std::optional<std::string> error;

    bool ok() const { return status == "ok"; }
    std::string json() const;
    std::string human() const;
};

struct Report {
    std::vector<ReportLine> lines;

    bool ok() const;
    std::string json() const;
    std::string human() const;
};

// Directives run in order. The check context picks up `dim` declarations.
Report run_file(const SourceFile& f, const std::string& filename, const DriverOptions& opts);

enum class ExprMode { Eval, Trace, Observe };
ReportLine run_expr(ExprMode mode, const Term& t, const Term& type, const CheckCtx& ctx, const DriverOptions& opts,
                    const std::string& label);

}  // namespace cubind
