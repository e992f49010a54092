#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace aspc;

TEST_CASE("domain extraction keeps fact-only predicates in order") {
    const auto p = th::corpus_pipeline("max.lp");
    REQUIRE(p.an.domains.order == std::vector<std::string>{"num"});
    REQUIRE(p.an.domains.tuples.at("num").size() == 3);
    REQUIRE(p.an.domains.column("num", 0) ==
            std::vector<std::string>{"3", "7", "5"});
    // predicates with any rule head are not domains
    REQUIRE_FALSE(p.an.domains.is_domain("smaller"));
}

TEST_CASE("a predicate with both facts and rules is not a domain") {
    const auto p = th::pipeline("d(1). d(2).\nd(X) :- e(X).\ne(3).\n");
    REQUIRE_FALSE(p.an.domains.is_domain("d"));
    REQUIRE(p.an.domains.is_domain("e"));
}

TEST_CASE("generator map prefers unary domain literals") {
    const Program p = parse_program(
        "d(1). d(2). r(1,2).\n"
        "q(X) :- r(X,Y), d(X), d(Y).\n");
    const DomainMap dm = extract_domains(p);
    const GeneratorMap g = generator_map(p.rules[3], dm);
    REQUIRE(g.at("X").pred == "d");
    REQUIRE(g.at("X").arity == 1);
    REQUIRE(g.at("Y").pred == "d");
}

TEST_CASE("binary domain literals can generate when no unary one exists") {
    const Program p = parse_program("r(1,2). r(2,3).\nq(X) :- r(X,Y).\n");
    const GeneratorMap g = generator_map(p.rules[2], extract_domains(p));
    REQUIRE(g.at("X").pred == "r");
    REQUIRE(g.at("X").arg_pos == 0);
    REQUIRE(g.at("Y").arg_pos == 1);
}

TEST_CASE("safety violations are reported with variable and line") {
    using Catch::Matchers::ContainsSubstring;
    const auto p = th::pipeline("d(1).\np(X) :- d(X), not q(Y).\n");
    REQUIRE_FALSE(p.an.safety.ok);
    REQUIRE_THAT(p.an.safety.violations[0], ContainsSubstring("Y"));
    REQUIRE(p.an.cls.rejected());
}

TEST_CASE("non-ground facts are unsafe") {
    const auto p = th::pipeline("d(X).\n");
    REQUIRE_FALSE(p.an.safety.ok);
}

TEST_CASE("variables bound only through equality aliases are safe") {
    // head normalization introduces V1 = 1 / V2 = X bodies; both must count
    // as bound
    const auto p = th::pipeline("d(1). d(2).\np(1, X) :- d(X).\n");
    REQUIRE(p.an.safety.ok);
    REQUIRE(p.an.cls.kind == ProgramClass::Kind::Hierarchical);
    REQUIRE(p.an.arg_domains.at("p")[0] == std::vector<std::string>{"1"});
    REQUIRE(p.an.arg_domains.at("p")[1] ==
            std::vector<std::string>{"1", "2"});
}

TEST_CASE("dependency graph edges carry sign") {
    const auto p = th::corpus_pipeline("max.lp");
    bool saw_negative = false;
    for (const auto& e : p.an.graph.edges)
        if (e.from == "max" && e.to == "smaller") saw_negative = e.negative;
    REQUIRE(saw_negative);
}

TEST_CASE("topological order lists callees first") {
    for (const auto& name : th::corpus_names()) {
        const auto p = th::corpus_pipeline(name);
        const auto& topo = p.an.graph.topo;
        auto pos = [&](const std::string& n) {
            return std::find(topo.begin(), topo.end(), n) - topo.begin();
        };
        for (const auto& e : p.an.graph.edges) {
            if (p.an.graph.scc_of.at(e.from) == p.an.graph.scc_of.at(e.to))
                continue;
            REQUIRE(pos(e.to) < pos(e.from));
        }
    }
}

TEST_CASE("classification separates the three classes") {
    REQUIRE(th::corpus_pipeline("max.lp").an.cls.kind ==
            ProgramClass::Kind::Hierarchical);
    REQUIRE(th::corpus_pipeline("hier_chain.lp").an.cls.kind ==
            ProgramClass::Kind::Hierarchical);
    REQUIRE(th::corpus_pipeline("even_loop.lp").an.cls.kind ==
            ProgramClass::Kind::TightChoice);
    REQUIRE(th::corpus_pipeline("coloring_folded.lp").an.cls.kind ==
            ProgramClass::Kind::TightChoice);
}

TEST_CASE("positive recursion is rejected") {
    using Catch::Matchers::ContainsSubstring;
    const auto p = th::pipeline("d(1).\np(X) :- d(X), p(X).\n");
    REQUIRE(p.an.cls.rejected());
    bool found = false;
    for (const auto& r : p.an.cls.reasons)
        if (r.find("positive") != std::string::npos) found = true;
    REQUIRE(found);
}

TEST_CASE("head-less rules are rejected with their line number") {
    const auto an =
        analyze(normalize_heads(parse_program(th::corpus_text(
            "coloring_constraints.lp"))));
    REQUIRE(an.cls.rejected());
    bool found = false;
    for (const auto& r : an.cls.reasons)
        if (r.find("head-less rule at line 6") != std::string::npos)
            found = true;
    REQUIRE(found);
}

TEST_CASE("atom universe covers every derivable tuple") {
    const auto p = th::corpus_pipeline("coloring_folded.lp");
    const auto tuples = atom_universe(p.an, "color");
    REQUIRE(tuples.size() == 9); // 3 nodes x 3 colors
}

TEST_CASE("herbrand size sums atom universes") {
    const auto p = th::corpus_pipeline("max.lp");
    // num: 3, smaller: 3, max: 3
    REQUIRE(herbrand_size(p.an) == 9);
}
