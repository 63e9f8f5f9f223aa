#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubind/evaluator.hpp"

namespace cubind {

struct SrcPos {
    int line = 1;
    int col = 1;
};

struct ParseError : std::runtime_error {
    SrcPos pos;
    ParseError(SrcPos p, const std::string& msg)
        : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg), pos(p) {}
};

struct DataInfo {
    std::string name;
    Telescope delta;
    Schema schema;
};

// Names visible to the parser. Later declarations shadow earlier ones.
struct Env {
    std::map<std::string, DataInfo> data;
    std::map<std::string, Schema> labels;
    std::map<std::string, Term> defs;
    std::vector<Name> dims;

    void add_data(const DataInfo& d, bool override_labels = true);
};

struct Decl {
    enum class Kind { Data, Def, Dim, Eval, Observe, Trace };
    Kind kind = Kind::Eval;
    SrcPos pos;
    std::string name;         // data and def
    DataInfo data;            // data
    Term type;                // def (optional), observe
    Term term;                // def, eval, observe, trace
    std::vector<Name> dims;   // dim
    std::optional<ObservationTree> expect;  // observe
};

struct SourceFile {
    std::vector<Decl> decls;
};

// Parses a whole file, extending `env` as declarations are read.
SourceFile parse_file(const std::string& text, Env& env);
Term parse_term(const std::string& text, const Env& env);
ObservationTree parse_tree(const std::string& text);

std::string print_decl(const Decl& d, const std::vector<std::pair<Term, std::string>>& defs = {});
// One declaration per line; definitions are printed by name where they occur.
std::string print_file(const SourceFile& f);

}  // namespace cubind
