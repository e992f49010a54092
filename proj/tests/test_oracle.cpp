#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace aspc;

namespace {

std::set<std::string> atom_set(const GroundProgram& g, const Interp& i,
                               bool domain = false) {
    const auto v = interp_atoms(g, i, domain);
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("grounding interns every derivable atom once") {
    const auto p = th::corpus_pipeline("max.lp");
    const GroundProgram g = ground(p.normalized, p.an);
    REQUIRE(g.n_atoms() == 9);
    std::set<std::string> names(g.atom_names.begin(), g.atom_names.end());
    REQUIRE(names.size() == g.n_atoms());
    REQUIRE(names.count("max(7)") == 1);
    REQUIRE(names.count("smaller(7)") == 1);
}

TEST_CASE("grounding resolves equality aliases from head normalization") {
    const auto p = th::pipeline("d(1). d(2).\np(1, X) :- d(X).\n");
    const GroundProgram g = ground(p.normalized, p.an);
    const Interp m = perfect_model(g, p.an.graph);
    REQUIRE(atom_set(g, m) ==
            std::set<std::string>{"p(1,1)", "p(1,2)"});
}

TEST_CASE("least model of a definite program") {
    const auto p = th::corpus_pipeline("hier_chain.lp");
    const GroundProgram g = ground(p.normalized, p.an);
    const Interp m = perfect_model(g, p.an.graph);
    const auto atoms = atom_set(g, m);
    REQUIRE(atoms.count("hop2(a,c)") == 1);
    REQUIRE(atoms.count("hop2(b,d)") == 1);
    REQUIRE(atoms.count("mid(b)") == 1);
    REQUIRE(atoms.count("mid(c)") == 1);
    REQUIRE(atoms.count("endpoint(a)") == 1);
    REQUIRE(atoms.count("endpoint(d)") == 1);
    REQUIRE(atoms.count("endpoint(b)") == 0);
}

TEST_CASE("stability check on the even loop") {
    const auto p = th::corpus_pipeline("even_loop.lp");
    const GroundProgram g = ground(p.normalized, p.an);
    const int ip = g.atom_ids.at("p");
    const int iq = g.atom_ids.at("q");
    Interp both(g.n_atoms(), false);
    both[ip] = both[iq] = true;
    REQUIRE_FALSE(is_stable(g, both));
    Interp only_p(g.n_atoms(), false);
    only_p[ip] = true;
    REQUIRE(is_stable(g, only_p));
    Interp none(g.n_atoms(), false);
    REQUIRE_FALSE(is_stable(g, none));
}

TEST_CASE("subset and choice enumeration agree on small programs") {
    for (const auto& name : th::corpus_names()) {
        const auto p = th::corpus_pipeline(name);
        if (p.an.cls.rejected()) continue;
        const GroundProgram g = ground(p.normalized, p.an);
        std::size_t non_domain = 0;
        for (bool d : g.atom_is_domain)
            if (!d) ++non_domain;
        if (non_domain > 22) continue;
        REQUIRE(th::oracle_models(p, OracleMode::Subset) ==
                th::oracle_models(p, OracleMode::Choice));
    }
}

TEST_CASE("the perfect model is the unique answer set of a hierarchical "
          "program") {
    for (const auto& name :
         {"max.lp", "hier_chain.lp", "hier_eq.lp", "undefined.lp"}) {
        const auto p = th::corpus_pipeline(name);
        REQUIRE(p.an.cls.kind == ProgramClass::Kind::Hierarchical);
        const GroundProgram g = ground(p.normalized, p.an);
        const auto models = answer_sets(g, OracleMode::Choice, p.an.graph);
        REQUIRE(models.size() == 1);
        REQUIRE(models[0] == perfect_model(g, p.an.graph));
    }
}

TEST_CASE("folded coloring has exactly six answer sets") {
    const auto p = th::corpus_pipeline("coloring_folded.lp");
    const auto models = th::oracle_models(p, OracleMode::Choice);
    REQUIRE(models.size() == 6);
    for (const auto& m : models) {
        int colored = 0;
        for (const auto& a : m)
            if (a.rfind("color(", 0) == 0) ++colored;
        REQUIRE(colored == 3); // each node gets exactly one color
    }
}

TEST_CASE("the subset oracle refuses oversized ground programs") {
    std::string text;
    for (int i = 1; i <= 12; ++i) text += "d(" + std::to_string(i) + ").\n";
    text += "p(X) :- d(X), not q(X).\nq(X) :- d(X), not p(X).\n";
    const auto p = th::pipeline(text);
    const GroundProgram g = ground(p.normalized, p.an);
    REQUIRE_THROWS_AS(answer_sets(g, OracleMode::Subset, p.an.graph),
                      OracleCapError);
    // the pruned search handles the same program fine
    REQUIRE(answer_sets(g, OracleMode::Choice, p.an.graph).size() == 4096);
}
