#include <catch2/catch_amalgamated.hpp>

#include "aspc/difftest.hpp"
#include "aspc/generate.hpp"
#include "helpers.hpp"

using namespace aspc;

TEST_CASE("generation is deterministic in the seed") {
    DiffConfig cfg;
    for (std::uint64_t seed : {1ull, 42ull, 987654321ull}) {
        const Program a = gen_random_program(seed, cfg);
        const Program b = gen_random_program(seed, cfg);
        REQUIRE(render(a) == render(b));
    }
    REQUIRE(render(gen_random_program(1, cfg)) !=
            render(gen_random_program(2, cfg)));
}

TEST_CASE("generated programs respect the configured bounds") {
    DiffConfig cfg;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Program p = gen_random_program(seed, cfg);
        std::size_t rules = 0;
        for (const auto& r : p.rules) {
            REQUIRE(r.head.has_value()); // never head-less
            if (!r.is_fact()) {
                ++rules;
                std::size_t real_body = 0;
                for (const auto& l : r.body)
                    if (l.is_cmp() || l.atom.pred != "dom") ++real_body;
                REQUIRE(real_body <= cfg.max_body);
            }
            if (r.head->pred != "dom" && r.head->pred != "rel")
                REQUIRE(r.head->args.size() <= cfg.max_arity);
        }
        REQUIRE(rules <= cfg.max_rules);
    }
}

TEST_CASE("generated programs are safe and never rejected for safety") {
    DiffConfig cfg;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const Program p = gen_random_program(seed, cfg);
        const Analysis an = analyze(normalize_heads(p));
        INFO("seed " << seed << "\n" << render(p));
        REQUIRE(an.safety.ok);
        REQUIRE_FALSE(an.cls.rejected());
    }
}

TEST_CASE("the corpus of random programs exercises both accepted classes") {
    DiffConfig cfg;
    int hierarchical = 0, tight = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Analysis an =
            analyze(normalize_heads(gen_random_program(seed, cfg)));
        if (an.cls.kind == ProgramClass::Kind::Hierarchical) ++hierarchical;
        if (an.cls.kind == ProgramClass::Kind::TightChoice) ++tight;
    }
    REQUIRE(hierarchical > 20);
    REQUIRE(tight > 20);
}

TEST_CASE("a short differential run agrees and reports per-case detail") {
    DiffConfig cfg;
    cfg.seed = 7;
    cfg.cases = 60;
    const DiffReport rep = difftest(cfg);
    REQUIRE(rep.cases == 60);
    REQUIRE(rep.disagree == 0);
    REQUIRE(rep.agree + rep.skipped == 60);
    REQUIRE(rep.details.size() == 60);
    for (std::size_t i = 0; i < rep.details.size(); ++i) {
        REQUIRE(rep.details[i].index == i);
        REQUIRE(rep.details[i].seed == 7 + i);
    }
    REQUIRE_FALSE(rep.first_disagreement.has_value());
}

TEST_CASE("differential runs are reproducible") {
    DiffConfig cfg;
    cfg.seed = 11;
    cfg.cases = 30;
    const DiffReport a = difftest(cfg);
    const DiffReport b = difftest(cfg);
    REQUIRE(a.agree == b.agree);
    REQUIRE(a.skipped == b.skipped);
    for (std::size_t i = 0; i < a.details.size(); ++i)
        REQUIRE(a.details[i].outcome == b.details[i].outcome);
}
