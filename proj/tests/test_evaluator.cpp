#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace aspc;

namespace {

Literal ground_pos(const std::string& pred,
                   std::vector<std::string> args = {}) {
    Atom a;
    a.pred = pred;
    for (auto& v : args) a.args.push_back(Term::constant(v));
    return Literal::pos(a);
}

} // namespace

TEST_CASE("ground goals succeed exactly on true atoms") {
    const auto p = th::corpus_pipeline("max.lp");
    Evaluator ev(p.cp, p.an);
    REQUIRE(ev.solve_goal(ground_pos("max", {"7"})).has_value());
    REQUIRE_FALSE(ev.solve_goal(ground_pos("max", {"5"})).has_value());
    REQUIRE(ev.solve_goal(ground_pos("smaller", {"3"})).has_value());
    REQUIRE_FALSE(ev.solve_goal(ground_pos("smaller", {"7"})).has_value());
    REQUIRE(ev.solve_goal(negate_literal(ground_pos("smaller", {"7"})))
                .has_value());
}

TEST_CASE("partial models record both signs and render without domain "
          "facts") {
    const auto p = th::corpus_pipeline("max.lp");
    Evaluator ev(p.cp, p.an);
    const auto m = ev.solve_goal(ground_pos("max", {"7"}));
    REQUIRE(m.has_value());
    REQUIRE(m->consistent());
    REQUIRE(render(*m, p.an.domains) == "{max(7), not smaller(7)}");
}

TEST_CASE("queries enumerate the argument domain") {
    const auto p = th::corpus_pipeline("max.lp");
    Evaluator ev(p.cp, p.an);
    const auto answers = ev.query(parse_query("max(X)"));
    REQUIRE(answers.size() == 1);
    REQUIRE(answers[0].substitution.at("X") == "7");
    const auto sm = ev.query(parse_query("smaller(X)"));
    REQUIRE(sm.size() == 2);
}

TEST_CASE("the coinductive hypothesis justifies even-loop atoms") {
    const auto p = th::corpus_pipeline("even_loop.lp");
    Evaluator ev(p.cp, p.an);
    const auto m = ev.solve_goal(ground_pos("p"));
    REQUIRE(m.has_value());
    REQUIRE(render(*m, p.an.domains) == "{p, not q}");
    // q alone is also justified: the two answers come from different models
    REQUIRE(ev.solve_goal(ground_pos("q")).has_value());
}

TEST_CASE("positive self-dependence fails finitely instead of looping") {
    // not rejected up front here: the evaluator itself must terminate
    const auto text = "p :- p.\n";
    const Program src = parse_program(text);
    const Program norm = normalize_heads(src);
    const Analysis an = analyze(norm);
    const CompletionProgram cp = build_completion(src, an.domains);
    Evaluator ev(cp, an);
    REQUIRE_FALSE(ev.solve_goal(ground_pos("p")).has_value());
}

TEST_CASE("the depth budget is enforced") {
    const auto p = th::corpus_pipeline("max.lp");
    Evaluator ev(p.cp, p.an, 1);
    REQUIRE_THROWS_AS(ev.solve_goal(ground_pos("max", {"7"})),
                      BudgetExceeded);
}

TEST_CASE("traces record goals with outcomes") {
    const auto p = th::corpus_pipeline("max.lp");
    Evaluator ev(p.cp, p.an);
    ev.query(parse_query("max(X)"));
    const auto& t = ev.trace();
    REQUIRE_FALSE(t.empty());
    bool success = false, failure = false;
    for (const auto& line : t) {
        REQUIRE_FALSE(line.goal.empty());
        if (line.outcome == "success") success = true;
        if (line.outcome == "failure") failure = true;
    }
    REQUIRE(success);
    REQUIRE(failure);
}

TEST_CASE("query answers embed in an oracle answer set") {
    for (const auto& name : th::corpus_names()) {
        const auto p = th::corpus_pipeline(name);
        if (p.an.cls.rejected()) continue;
        const GroundProgram g = ground(p.normalized, p.an);
        std::vector<std::set<std::string>> sets;
        for (const auto& i : answer_sets(g, OracleMode::Choice, p.an.graph)) {
            const auto atoms = interp_atoms(g, i, true);
            sets.emplace_back(atoms.begin(), atoms.end());
        }
        Evaluator ev(p.cp, p.an);
        for (const auto& [pred, n] : p.an.arity) {
            if (p.an.domains.is_domain(pred)) continue;
            if (!p.an.arg_domains.count(pred)) continue;
            for (const auto& tup : atom_universe(p.an, pred)) {
                auto m = ev.solve_goal(ground_pos(pred, tup));
                if (!m) continue;
                REQUIRE(m->consistent());
                bool embedded = false;
                for (const auto& s : sets) {
                    bool ok = true;
                    for (const auto& a : m->pos)
                        if (!s.count(a)) ok = false;
                    for (const auto& a : m->neg)
                        if (s.count(a)) ok = false;
                    if (ok) embedded = true;
                }
                REQUIRE(embedded);
            }
        }
    }
}
