// ============================================================================
// aspc/generate.hpp — seeded random program generator for differential tests
// ============================================================================
//
// Programs are safe by construction: every variable of every rule gets a
// unary generator over the domain predicate `dom`.  Positive references only
// point at strictly lower-numbered predicates, so the positive dependency
// graph is acyclic and the generated class is always Hierarchical or
// TightChoice (negative references may point anywhere, which is what creates
// even loops and choices).  Head-less rules are never emitted: the
// synthesizer rejects them, and rejected cases would only inflate the skip
// rate of the harness.
//
// Draws use mt19937_64 with modulo reduction so a seed reproduces the same
// program on every platform.
//
// ============================================================================

#ifndef ASPC_GENERATE_HPP
#define ASPC_GENERATE_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aspc/ast.hpp"

namespace aspc {

struct DiffConfig {
    std::uint64_t seed = 1;
    std::size_t cases = 500;
    std::size_t max_constants = 4;
    std::size_t max_predicates = 3;
    std::size_t max_arity = 2;
    std::size_t max_rules = 6;
    std::size_t max_body = 3;
    double negation_probability = 0.4;
};

namespace detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::size_t below(std::size_t n) {
        return n ? static_cast<std::size_t>(eng_() % n) : 0;
    }
    std::size_t between(std::size_t lo, std::size_t hi) { // inclusive
        return lo + below(hi - lo + 1);
    }
    bool chance(double p) {
        return static_cast<double>(eng_() >> 11) / 9007199254740992.0 < p;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace detail

inline Program gen_random_program(std::uint64_t seed, const DiffConfig& cfg) {
    detail::Rng rng(seed);
    Program p;

    const std::size_t n_const = rng.between(2, std::max<std::size_t>(
                                                   2, cfg.max_constants));
    std::vector<std::string> consts;
    for (std::size_t i = 1; i <= n_const; ++i)
        consts.push_back(std::to_string(i));

    auto fact = [&](const std::string& pred,
                    const std::vector<std::string>& args) {
        Rule r;
        Atom a;
        a.pred = pred;
        for (const auto& v : args) a.args.push_back(Term::constant(v));
        r.head = std::move(a);
        p.rules.push_back(std::move(r));
    };

    // the unary domain; every constant is a member so generators are total
    for (const auto& c : consts) fact("dom", {c});

    // optionally a binary domain relation for positive body variety
    const bool has_rel = cfg.max_arity >= 2 && rng.chance(0.5);
    if (has_rel) {
        const std::size_t n_tuples = rng.between(1, n_const);
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (std::size_t i = 0; i < n_tuples; ++i) {
            const auto a = rng.below(n_const), b = rng.below(n_const);
            if (seen.insert({a, b}).second)
                fact("rel", {consts[a], consts[b]});
        }
    }

    const std::size_t n_pred = rng.between(1, std::max<std::size_t>(
                                                  1, cfg.max_predicates));
    std::vector<std::size_t> arity(n_pred);
    for (auto& a : arity)
        a = (cfg.max_arity >= 2 && rng.chance(0.3))
                ? rng.between(2, cfg.max_arity)
                : 1;
    auto pred_name = [](std::size_t i) {
        return "p" + std::to_string(i + 1);
    };

    // a few ground facts over the derived predicates
    for (std::size_t i = 0; i < n_pred; ++i) {
        if (!rng.chance(0.25)) continue;
        std::vector<std::string> args;
        for (std::size_t j = 0; j < arity[i]; ++j)
            args.push_back(consts[rng.below(n_const)]);
        fact(pred_name(i), args);
    }

    const std::vector<std::string> var_pool{"X", "Y", "Z", "W"};
    const std::size_t n_rules = rng.between(1, std::max<std::size_t>(
                                                   1, cfg.max_rules));
    for (std::size_t r = 0; r < n_rules; ++r) {
        Rule rule;
        const std::size_t hp = rng.below(n_pred);
        std::vector<std::string> vars; // in play for this rule

        auto some_var = [&]() -> std::string {
            if (vars.empty() || (vars.size() < var_pool.size() &&
                                 rng.chance(0.4))) {
                vars.push_back(var_pool[vars.size()]);
                return vars.back();
            }
            return vars[rng.below(vars.size())];
        };
        auto some_term = [&]() {
            return rng.chance(0.2) ? Term::constant(consts[rng.below(n_const)])
                                   : Term::var(some_var());
        };

        Atom head;
        head.pred = pred_name(hp);
        for (std::size_t j = 0; j < arity[hp]; ++j)
            head.args.push_back(some_term());
        rule.head = std::move(head);

        std::vector<Literal> extras;
        const std::size_t n_body = rng.below(cfg.max_body + 1);
        for (std::size_t b = 0; b < n_body; ++b) {
            const std::size_t kind = rng.below(10);
            if (kind < 2) { // comparison
                const Term l = Term::var(some_var());
                const Term rt = some_term();
                const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Ne,
                                     CmpOp::Eq};
                extras.push_back(Literal::cmp(l, ops[rng.below(4)], rt));
                continue;
            }
            if (kind < 4 && has_rel) { // positive binary domain literal
                Atom a;
                a.pred = "rel";
                a.args.push_back(some_term());
                a.args.push_back(some_term());
                extras.push_back(Literal::pos(a));
                continue;
            }
            if (rng.chance(cfg.negation_probability)) {
                // negation may point anywhere, including at the head's own
                // predicate: that is where even loops come from
                const std::size_t tp = rng.below(n_pred);
                Atom a;
                a.pred = pred_name(tp);
                for (std::size_t j = 0; j < arity[tp]; ++j)
                    a.args.push_back(some_term());
                extras.push_back(Literal::neg(a));
            } else if (hp > 0) {
                // positive references only descend, keeping the program tight
                const std::size_t tp = rng.below(hp);
                Atom a;
                a.pred = pred_name(tp);
                for (std::size_t j = 0; j < arity[tp]; ++j)
                    a.args.push_back(some_term());
                extras.push_back(Literal::pos(a));
            }
        }

        // generators first: dom(V) for every variable in play
        for (const auto& v : vars) {
            Atom a;
            a.pred = "dom";
            a.args.push_back(Term::var(v));
            rule.body.push_back(Literal::pos(a));
        }
        for (auto& l : extras) rule.body.push_back(std::move(l));
        p.rules.push_back(std::move(rule));
    }
    return p;
}

} // namespace aspc

#endif // ASPC_GENERATE_HPP
