// ============================================================================
// aspc/difftest.hpp — differential harness: synthesized code vs oracle
// ============================================================================
//
// For each seeded random program: classify, synthesize, enumerate the models
// of the compiled artifact, and compare them (projected to non-domain atoms)
// against the ground-semantics oracle in choice mode.  When the non-domain
// base is small enough, the exhaustive subset oracle cross-checks the choice
// oracle too.  Capacity limits on either side mark the case skipped rather
// than failed; everything is reproducible from (seed, config).
//
// ============================================================================

#ifndef ASPC_DIFFTEST_HPP
#define ASPC_DIFFTEST_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"
#include "aspc/completion.hpp"
#include "aspc/generate.hpp"
#include "aspc/oracle.hpp"
#include "aspc/synth.hpp"

namespace aspc {

struct DiffCase {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string cls;
    std::string outcome; // "agree" | "disagree" | "skipped(<reason>)"
};

struct DiffDisagreement {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string program;
    std::vector<std::string> synth_models;
    std::vector<std::string> oracle_models;
};

struct DiffReport {
    std::size_t cases = 0, agree = 0, disagree = 0, skipped = 0;
    std::vector<DiffCase> details;
    std::optional<DiffDisagreement> first_disagreement;
};

namespace detail {

inline std::string model_text(const std::set<std::string>& atoms) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : atoms) {
        if (!first) out += ", ";
        out += a;
        first = false;
    }
    return out + "}";
}

inline std::vector<std::string> model_texts(
    const std::set<std::set<std::string>>& models) {
    std::vector<std::string> out;
    for (const auto& m : models) out.push_back(model_text(m));
    return out;
}

inline std::set<std::set<std::string>> oracle_model_set(
    const GroundProgram& g, const std::vector<Interp>& interps) {
    std::set<std::set<std::string>> out;
    for (const auto& i : interps) {
        const auto atoms = interp_atoms(g, i, false);
        out.insert(std::set<std::string>(atoms.begin(), atoms.end()));
    }
    return out;
}

} // namespace detail

inline DiffReport difftest(const DiffConfig& cfg) {
    DiffReport rep;
    rep.cases = cfg.cases;
    for (std::size_t i = 0; i < cfg.cases; ++i) {
        const std::uint64_t case_seed = cfg.seed + i;
        const Program p = gen_random_program(case_seed, cfg);
        DiffCase dc;
        dc.index = i;
        dc.seed = case_seed;

        const Program normalized = normalize_heads(p);
        const Analysis an = analyze(normalized);
        switch (an.cls.kind) {
            case ProgramClass::Kind::Hierarchical:
                dc.cls = "hierarchical";
                break;
            case ProgramClass::Kind::TightChoice:
                dc.cls = "tight-choice";
                break;
            case ProgramClass::Kind::Rejected: dc.cls = "rejected"; break;
        }

        try {
            if (an.cls.rejected()) {
                dc.outcome = "skipped(rejected)";
                ++rep.skipped;
            } else {
                const ImpProgram ip = synthesize(p);
                const auto ms = enumerate_models(ip);
                const std::set<std::set<std::string>> synth_set(ms.begin(),
                                                                ms.end());

                const GroundProgram g = ground(normalized, an);
                const auto oracle_set = detail::oracle_model_set(
                    g, answer_sets(g, OracleMode::Choice, an.graph));

                std::size_t non_domain = 0;
                for (std::size_t a = 0; a < g.n_atoms(); ++a)
                    if (!g.atom_is_domain[a]) ++non_domain;
                if (non_domain <= 16) {
                    const auto subset_set = detail::oracle_model_set(
                        g, answer_sets(g, OracleMode::Subset, an.graph));
                    if (subset_set != oracle_set)
                        throw std::logic_error(
                            "oracle modes disagree on seed " +
                            std::to_string(case_seed));
                }

                if (synth_set == oracle_set) {
                    dc.outcome = "agree";
                    ++rep.agree;
                } else {
                    dc.outcome = "disagree";
                    ++rep.disagree;
                    if (!rep.first_disagreement) {
                        DiffDisagreement d;
                        d.index = i;
                        d.seed = case_seed;
                        d.program = render(p);
                        d.synth_models = detail::model_texts(synth_set);
                        d.oracle_models = detail::model_texts(oracle_set);
                        rep.first_disagreement = std::move(d);
                    }
                }
            }
        } catch (const OracleCapError& e) {
            dc.outcome = std::string("skipped(oracle cap: ") + e.what() + ")";
            ++rep.skipped;
        } catch (const SearchCapExceeded& e) {
            dc.outcome = std::string("skipped(search cap: ") + e.what() + ")";
            ++rep.skipped;
        }
        rep.details.push_back(std::move(dc));
    }
    return rep;
}

} // namespace aspc

#endif // ASPC_DIFFTEST_HPP
