// Command line front end: check, eval, trace, observe and run .cit files, and run the test suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cubind/driver.hpp"
#include "cubind/printer.hpp"
#include "cubind/stdlib.hpp"
#include "cubind/suites.hpp"

using namespace cubind;

namespace {

struct Loaded {
    std::string name;
    std::string text;
    Env env;
    SourceFile file;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// "file:line:col: msg" followed by the offending line and a caret.
std::string render(const std::string& name, const std::string& text, const ParseError& e) {
    std::string out = name + ":" + e.what();
    std::istringstream in(text);
    std::string line;
    for (int i = 0; i < e.pos.line && std::getline(in, line); ++i) {
    }
    out += "\n  " + line + "\n  " + std::string(static_cast<size_t>(std::max(0, e.pos.col - 1)), ' ') + "^";
    return out;
}

void emit(const Report& rep, bool json) { std::cout << (json ? rep.json() : rep.human()); }

ReportLine failure(const std::string& directive, const std::string& msg) {
    ReportLine r;
    r.directive = directive;
    r.status = "error";
    r.error = msg;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cartesian cubical kernel with indexed inductive types"};
    app.require_subcommand(1);
    app.fallthrough();

    DriverOptions opts;
    opts.fuel = default_fuel();
    bool json = false;
    std::vector<std::string> exts;
    app.add_flag("--opt-closed", opts.eval.opt_closed, "trivial coercion (and composition) at closed types");
    app.add_option("--ext", exts, "enable an extension")->allow_extra_args(false)->check(CLI::IsMember({"natrec", "paths"}));
    app.add_flag("--json", json, "JSON-lines report");

    std::string file, expr, at;
    auto file_opt = [&](CLI::App* c) { c->add_option("FILE", file, ".cit source; the prelude is used when omitted"); };

    auto* check = app.add_subcommand("check", "check every declaration in a file");
    check->add_option("FILE", file)->required();
    auto* run = app.add_subcommand("run", "check a file and run its directives");
    run->add_option("FILE", file)->required();
    run->add_option("--fuel", opts.fuel, "step budget");

    auto* ev = app.add_subcommand("eval", "evaluate an expression to a value");
    file_opt(ev);
    ev->add_option("-e", expr, "expression")->required();
    ev->add_option("--fuel", opts.fuel, "step budget");

    auto* tr = app.add_subcommand("trace", "print every reduction step");
    file_opt(tr);
    tr->add_option("-e", expr, "expression")->required();
    tr->add_option("--max", opts.trace_max, "step limit");

    auto* ob = app.add_subcommand("observe", "read a value back as a constructor tree");
    file_opt(ob);
    ob->add_option("-e", expr, "expression")->required();
    ob->add_option("--at", at, "type")->required();
    ob->add_option("--fuel", opts.fuel, "step budget");

    std::string suite;
    uint32_t seed = SuiteOptions{}.seed;
    auto* test = app.add_subcommand("test", "run the built-in suites");
    test->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names()));
    test->add_option("--seed", seed, "generator seed");

    std::string outdir;
    auto* lib = app.add_subcommand("stdlib", "write the catalog as .cit files");
    lib->add_option("DIR", outdir)->required();

    CLI11_PARSE(app, argc, argv);
    for (const auto& e : exts) (e == "natrec" ? opts.check.ext_natrec : opts.check.ext_paths) = true;

    try {
        if (test->parsed()) {
            SuiteOptions so;
            so.eval = opts.eval;
            so.seed = seed;
            bool ok = true;
            for (const auto& n : suite_names()) {
                if (!suite.empty() && n != suite) continue;
                SuiteResult r = run_suite(n, so);
                ok = ok && r.ok();
                if (json) {
                    nlohmann::ordered_json j;
                    j["suite"] = r.name;
                    j["status"] = r.ok() ? "ok" : "error";
                    j["cases"] = r.cases;
                    j["failures"] = r.failures;
                    j["notes"] = r.notes;
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << r.summary() << "\n";
                    for (const auto& f : r.failures) std::cout << "  FAIL " << f << "\n";
                }
            }
            return ok ? 0 : 1;
        }
        if (lib->parsed()) {
            std::filesystem::create_directories(outdir);
            for (const auto& d : catalog()) {
                std::ofstream out(std::filesystem::path(outdir) / (d.name + ".cit"));
                out << print_file(stdlib_file(d));
            }
            std::ofstream(std::filesystem::path(outdir) / "natrec_demo.cit") << natrec_demo_source();
            return 0;
        }

        Loaded src;
        if (file.empty()) {
            src.name = "<prelude>";
            src.env = prelude();
        } else {
            src.name = file;
            src.text = read_file(file);
            try {
                src.file = parse_file(src.text, src.env);
            } catch (const ParseError& e) {
                Report rep;
                rep.lines.push_back(failure("parse", render(src.name, src.text, e)));
                emit(rep, json);
                return 1;
            }
        }

        if (check->parsed() || run->parsed()) {
            DriverOptions o = opts;
            o.execute = run->parsed();
            Report rep = run_file(src.file, src.name, o);
            emit(rep, json);
            return rep.ok() ? 0 : 1;
        }

        // Expression commands: the file's declarations must check first.
        DriverOptions quiet = opts;
        quiet.execute = false;
        Report pre = run_file(src.file, src.name, quiet);
        if (!pre.ok()) {
            emit(pre, json);
            return 1;
        }
        CheckCtx ctx;
        for (const auto& x : src.env.dims) ctx = ctx.with_dim(x);
        Term t, type;
        try {
            t = parse_term(expr, src.env);
            if (ob->parsed()) type = parse_term(at, src.env);
        } catch (const ParseError& e) {
            Report rep;
            rep.lines.push_back(failure("parse", render("<expr>", ob->parsed() && t ? at : expr, e)));
            emit(rep, json);
            return 1;
        }
        ExprMode mode = ev->parsed() ? ExprMode::Eval : tr->parsed() ? ExprMode::Trace : ExprMode::Observe;
        const char* word = mode == ExprMode::Eval ? "eval " : mode == ExprMode::Trace ? "trace " : "observe ";
        Report rep;
        rep.lines.push_back(run_expr(mode, t, type, ctx, opts, word + expr + (type ? " : " + at : "")));
        emit(rep, json);
        return rep.ok() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "cubind: " << e.what() << "\n";
        return 1;
    }
}
