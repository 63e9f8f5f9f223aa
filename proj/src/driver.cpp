#include "cubind/driver.hpp"

#include <json.hpp>

#include "cubind/printer.hpp"

namespace cubind {

std::string ReportLine::json() const {
    nlohmann::ordered_json j;
    j["directive"] = directive;
    j["status"] = status;
    j["steps"] = steps;
    if (!trace.empty())
        j["value"] = trace;
    else if (value)
        j["value"] = *value;
    if (error) j["error"] = *error;
    return j.dump();
}

std::string ReportLine::human() const {
    std::string s = directive;
    for (const auto& t : trace) s += "\n  " + t;
    if (value && trace.empty()) s += "\n  => " + *value;
    if (steps) s += "\n  (" + std::to_string(steps) + (steps == 1 ? " step)" : " steps)");
    if (error) s += "\n  " + status + ": " + *error;
    return s;
}

bool Report::ok() const {
    for (const auto& l : lines)
        if (!l.ok()) return false;
    return true;
}

std::string Report::json() const {
    std::string s;
    for (const auto& l : lines) s += l.json() + "\n";
    return s;
}

std::string Report::human() const {
    std::string s;
    for (const auto& l : lines) s += l.human() + "\n";
    return s;
}

namespace {

std::string describe(const CheckError& e) {
    return std::string(kind_name(e.kind)) + ": " + e.what();
}

void set_error(ReportLine& r, const std::string& where, const std::string& msg, const char* status = "error") {
    r.status = status;
    r.error = where.empty() ? msg : where + ": " + msg;
}

}  // namespace

ReportLine run_expr(ExprMode mode, const Term& t, const Term& type, const CheckCtx& ctx, const DriverOptions& opts,
                    const std::string& label) {
    ReportLine r;
    r.directive = label;
    r.status = "ok";
    if (type) {
        if (auto e = check_type(ctx, type, opts.check)) {
            set_error(r, "", describe(*e));
            return r;
        }
        if (auto e = check_term(ctx, t, type, opts.check)) {
            set_error(r, "", describe(*e));
            return r;
        }
    } else {
        InferResult inf = infer_term(ctx, t, opts.check);
        if (inf.error) {
            set_error(r, "", describe(*inf.error));
            return r;
        }
    }
    if (!opts.execute) return r;
    try {
        switch (mode) {
            case ExprMode::Eval: {
                Term v = eval(t, opts.fuel, opts.eval, &r.steps);
                r.value = print(v);
                break;
            }
            case ExprMode::Observe: {
                r.value = observe(t, type, opts.eval, opts.fuel, &r.steps).str();
                break;
            }
            case ExprMode::Trace: {
                Trace tr = trace(t, opts.trace_max, opts.eval);
                for (const auto& x : tr.terms) r.trace.push_back(print(x));
                r.steps = tr.terms.empty() ? 0 : tr.terms.size() - 1;
                if (tr.last.kind == StepResult::Kind::Stuck)
                    set_error(r, "", "stuck: " + tr.last.reason);
                else if (tr.last.kind == StepResult::Kind::Steps)
                    set_error(r, "", "step limit " + std::to_string(opts.trace_max) + " reached");
                break;
            }
        }
    } catch (const EvalError& e) {
        set_error(r, "", e.what());
    } catch (const InterpError& e) {
        set_error(r, "", std::string("stuck: ") + e.what());
    }
    return r;
}

Report run_file(const SourceFile& f, const std::string& filename, const DriverOptions& opts) {
    Report rep;
    CheckCtx ctx;
    std::vector<std::pair<Term, std::string>> defs;
    for (const auto& d : f.decls) {
        std::string where = filename + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.col);
        ReportLine r;
        r.status = "ok";
        switch (d.kind) {
            case Decl::Kind::Data: {
                r.directive = "data " + d.name;
                CheckResult e = check_telescope(ctx, d.data.delta, opts.check);
                if (!e) e = check_constrs(ctx, d.data.delta, d.data.schema, opts.check);
                if (e) set_error(r, where, describe(*e));
                break;
            }
            case Decl::Kind::Def: {
                r.directive = "def " + d.name;
                ReportLine x = run_expr(ExprMode::Eval, d.term, d.type, ctx, [&] {
                    DriverOptions o = opts;
                    o.execute = false;
                    return o;
                }(), r.directive);
                if (!x.ok()) set_error(r, where, *x.error);
                defs.emplace_back(d.term, d.name);
                break;
            }
            case Decl::Kind::Dim: {
                r.directive = print_decl(d);
                for (const auto& x : d.dims) ctx = ctx.with_dim(x);
                break;
            }
            case Decl::Kind::Eval:
            case Decl::Kind::Trace:
            case Decl::Kind::Observe: {
                ExprMode m = d.kind == Decl::Kind::Eval    ? ExprMode::Eval
                             : d.kind == Decl::Kind::Trace ? ExprMode::Trace
                                                           : ExprMode::Observe;
                r = run_expr(m, d.term, d.kind == Decl::Kind::Observe ? d.type : nullptr, ctx, opts,
                             print_decl(d, defs));
                if (r.error) r.error = where + ": " + *r.error;
                if (r.ok() && opts.execute && d.expect && r.value && *r.value != d.expect->str()) {
                    r.status = "mismatch";
                    r.error = where + ": expected " + d.expect->str() + ", got " + *r.value;
                }
                break;
            }
        }
        rep.lines.push_back(std::move(r));
    }
    return rep;
}

}  // namespace cubind
