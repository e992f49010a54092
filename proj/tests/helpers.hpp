// Shared fixtures for the test suite: corpus loading and pipeline shortcuts.
#ifndef ASPC_TESTS_HELPERS_HPP
#define ASPC_TESTS_HELPERS_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"
#include "aspc/completion.hpp"
#include "aspc/evaluator.hpp"
#include "aspc/oracle.hpp"
#include "aspc/parse.hpp"
#include "aspc/synth.hpp"

namespace th {

inline std::string corpus_path(const std::string& name) {
    return std::string(ASPC_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing corpus file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string corpus_text(const std::string& name) {
    return slurp(corpus_path(name));
}

struct Pipeline {
    aspc::Program source;
    aspc::Program normalized;
    aspc::Analysis an;
    aspc::CompletionProgram cp;
};

inline Pipeline pipeline(const std::string& text) {
    Pipeline p;
    p.source = aspc::parse_program(text);
    p.normalized = aspc::normalize_heads(p.source);
    p.an = aspc::analyze(p.normalized);
    if (!p.an.cls.rejected())
        p.cp = aspc::dualize(p.normalized, p.an.domains);
    return p;
}

inline Pipeline corpus_pipeline(const std::string& name) {
    return pipeline(corpus_text(name));
}

using ModelSet = std::set<std::set<std::string>>;

// non-domain atoms of each oracle answer set
inline ModelSet oracle_models(const Pipeline& p, aspc::OracleMode mode) {
    const aspc::GroundProgram g = aspc::ground(p.normalized, p.an);
    ModelSet out;
    for (const auto& i : aspc::answer_sets(g, mode, p.an.graph)) {
        const auto atoms = aspc::interp_atoms(g, i, false);
        out.insert(std::set<std::string>(atoms.begin(), atoms.end()));
    }
    return out;
}

inline ModelSet synth_models(const std::string& text) {
    const aspc::ImpProgram ip = aspc::synthesize(aspc::parse_program(text));
    ModelSet out;
    for (const auto& m : aspc::enumerate_models(ip)) out.insert(m);
    return out;
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "max.lp",          "even_loop.lp", "coloring_folded.lp",
        "hier_chain.lp",   "hier_eq.lp",   "undefined.lp",
        "choice_derived.lp"};
    return names;
}

} // namespace th

#endif
