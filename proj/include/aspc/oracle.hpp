// ============================================================================
// aspc/oracle.hpp — brute-force stable-model ground truth
// ============================================================================
//
// Deliberately naive: ground over the finite domains, then either
//   subset mode — test every subset of the non-domain atoms with the
//                 Gelfond–Lifschitz reduct (≤ 22 atoms), or
//   choice mode — depth-first over the choice-SCC atoms with completion-based
//                 pruning, deterministic extension through the remaining
//                 predicates, and a final reduct confirmation.
//
// Pruning never loses a stable model: a stable model is supported, so along
// its own branch every fully-decided completion clause holds.
//
// ============================================================================

#ifndef ASPC_ORACLE_HPP
#define ASPC_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"

namespace aspc {

struct OracleCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroundRule {
    int head = -1; // -1 = constraint
    std::vector<int> pos, neg;
};

struct GroundProgram {
    std::vector<std::string> atom_names;
    std::vector<std::string> atom_pred;
    std::vector<bool> atom_is_domain;
    std::map<std::string, int> atom_ids;
    std::vector<GroundRule> rules;

    int intern(const Atom& a, bool is_domain) {
        const std::string key = atom_key(a);
        auto it = atom_ids.find(key);
        if (it != atom_ids.end()) return it->second;
        const int id = static_cast<int>(atom_names.size());
        atom_ids.emplace(key, id);
        atom_names.push_back(key);
        atom_pred.push_back(a.pred);
        atom_is_domain.push_back(is_domain);
        return id;
    }

    std::size_t n_atoms() const { return atom_names.size(); }
};

using Interp = std::vector<bool>; // indexed by atom id

inline std::vector<std::string> interp_atoms(const GroundProgram& g,
                                             const Interp& i,
                                             bool include_domain_facts) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < g.n_atoms(); ++k) {
        if (!i[k]) continue;
        if (!include_domain_facts && g.atom_is_domain[k]) continue;
        out.push_back(g.atom_names[k]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ── Grounding ───────────────────────────────────────────────────────────────

namespace detail {

template <typename Fn>
void enumerate_substitutions(const std::vector<std::string>& vars,
                             const std::vector<std::vector<std::string>>& doms,
                             std::map<std::string, std::string>& sub,
                             std::size_t i, const Fn& fn) {
    if (i == vars.size()) {
        fn(sub);
        return;
    }
    for (const auto& v : doms[i]) {
        sub[vars[i]] = v;
        enumerate_substitutions(vars, doms, sub, i + 1, fn);
    }
    sub.erase(vars[i]);
}

inline Atom apply_sub(const Atom& a,
                      const std::map<std::string, std::string>& sub) {
    Atom out;
    out.pred = a.pred;
    for (const auto& t : a.args) {
        if (t.is_var()) {
            out.args.push_back(Term::constant(sub.at(t.name)));
        } else {
            out.args.push_back(t);
        }
    }
    return out;
}

inline std::string term_value(const Term& t,
                              const std::map<std::string, std::string>& sub) {
    return t.is_var() ? sub.at(t.name) : t.name;
}

} // namespace detail

inline GroundProgram ground(const Program& p, const Analysis& a,
                            std::size_t cap = 1000000) {
    GroundProgram g;
    std::size_t count = 0;
    for (const auto& r : p.rules) {
        const GeneratorMap gm = generator_map(r, a.domains);
        const std::map<std::string, Term> alias = rule_aliases(r, gm);
        std::vector<std::string> vars;
        std::vector<std::vector<std::string>> doms;
        for (const auto& v : detail::rule_vars(r)) {
            if (alias.count(v)) continue; // equality-bound: derived below
            auto it = gm.find(v);
            if (it == gm.end())
                throw std::runtime_error("cannot ground unsafe variable " + v);
            vars.push_back(v);
            doms.push_back(variable_domain(it->second, a.domains));
        }
        std::map<std::string, std::string> sub;
        detail::enumerate_substitutions(
            vars, doms, sub, 0,
            [&](std::map<std::string, std::string>& s) {
                for (const auto& [v, t] : alias)
                    s[v] = t.is_var() ? s.at(t.name) : t.name;
                GroundRule gr;
                for (const auto& l : r.body) {
                    if (l.is_cmp()) {
                        if (!eval_cmp(detail::term_value(l.left, s), l.op,
                                      detail::term_value(l.right, s)))
                            return; // false comparison: drop the instance
                        continue;   // true comparison: eliminated
                    }
                    const Atom at = detail::apply_sub(l.atom, s);
                    const int id =
                        g.intern(at, a.domains.is_domain(at.pred));
                    (l.positive() ? gr.pos : gr.neg).push_back(id);
                }
                if (r.head) {
                    const Atom at = detail::apply_sub(*r.head, s);
                    gr.head = g.intern(at, a.domains.is_domain(at.pred));
                }
                if (++count > cap)
                    throw OracleCapError(
                        "ground rule count exceeds cap of " +
                        std::to_string(cap));
                g.rules.push_back(std::move(gr));
            });
    }
    return g;
}

// ── Reduct and least model ──────────────────────────────────────────────────

inline std::vector<GroundRule> reduct(const GroundProgram& g, const Interp& i) {
    std::vector<GroundRule> out;
    for (const auto& r : g.rules) {
        if (r.head < 0) continue; // constraints handled post-hoc
        bool blocked = false;
        for (int a : r.neg)
            if (i[a]) blocked = true;
        if (blocked) continue;
        GroundRule pr;
        pr.head = r.head;
        pr.pos = r.pos;
        out.push_back(std::move(pr));
    }
    return out;
}

inline Interp least_model(const std::vector<GroundRule>& rules,
                          std::size_t n_atoms) {
    Interp m(n_atoms, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            if (m[r.head]) continue;
            bool sat = true;
            for (int a : r.pos)
                if (!m[a]) sat = false;
            if (sat) {
                m[r.head] = true;
                changed = true;
            }
        }
    }
    return m;
}

inline bool body_satisfied(const GroundRule& r, const Interp& i) {
    for (int a : r.pos)
        if (!i[a]) return false;
    for (int a : r.neg)
        if (i[a]) return false;
    return true;
}

inline bool is_stable(const GroundProgram& g, const Interp& i) {
    if (least_model(reduct(g, i), g.n_atoms()) != i) return false;
    for (const auto& r : g.rules)
        if (r.head < 0 && body_satisfied(r, i)) return false;
    return true;
}

// ── Enumeration ─────────────────────────────────────────────────────────────

enum class OracleMode { Subset, Choice };

namespace detail {

inline Interp fact_base(const GroundProgram& g) {
    // domain-predicate atoms: fact heads true, everything else false
    Interp base(g.n_atoms(), false);
    for (const auto& r : g.rules)
        if (r.head >= 0 && r.pos.empty() && r.neg.empty() &&
            g.atom_is_domain[r.head])
            base[r.head] = true;
    return base;
}

inline void sort_models(std::vector<Interp>& models) {
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
}

} // namespace detail

inline std::vector<Interp> subset_answer_sets(const GroundProgram& g,
                                              std::size_t atom_cap = 22) {
    std::vector<int> free_atoms;
    for (std::size_t k = 0; k < g.n_atoms(); ++k)
        if (!g.atom_is_domain[k]) free_atoms.push_back(static_cast<int>(k));
    if (free_atoms.size() > atom_cap)
        throw OracleCapError("subset mode: " +
                             std::to_string(free_atoms.size()) +
                             " non-domain atoms exceed cap of " +
                             std::to_string(atom_cap));
    const Interp base = detail::fact_base(g);
    std::vector<Interp> models;
    const std::uint64_t n = std::uint64_t{1} << free_atoms.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
        Interp cand = base;
        for (std::size_t b = 0; b < free_atoms.size(); ++b)
            if (mask & (std::uint64_t{1} << b)) cand[free_atoms[b]] = true;
        if (is_stable(g, cand)) models.push_back(std::move(cand));
    }
    detail::sort_models(models);
    return models;
}

// Choice mode.  Requires tightness (no positive cycle in the predicate
// graph); head-less rules are fine, they are checked by is_stable.
inline std::vector<Interp> choice_answer_sets(const GroundProgram& g,
                                              const DepGraph& dep,
                                              std::size_t node_cap =
                                                  std::size_t{1} << 20) {
    for (const auto& scc : dep.sccs)
        if (scc.has_positive_internal_cycle)
            throw std::runtime_error(
                "choice mode requires a tight program (positive cycle "
                "through " +
                scc.preds.front() + ")");

    std::set<std::string> choice_preds;
    for (const auto& scc : dep.sccs)
        if (scc.has_internal_edge)
            choice_preds.insert(scc.preds.begin(), scc.preds.end());

    // predicates transitively depending on a choice predicate
    std::set<std::string> tainted = choice_preds;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : dep.edges)
            if (tainted.count(e.to) && tainted.insert(e.from).second)
                grew = true;
    }

    // fixed truth of untainted atoms, in topological predicate order
    Interp fixed(g.n_atoms(), false);
    std::vector<bool> is_fixed(g.n_atoms(), false);
    std::map<std::string, std::vector<const GroundRule*>> by_pred;
    for (const auto& r : g.rules)
        if (r.head >= 0) by_pred[g.atom_pred[r.head]].push_back(&r);
    for (const auto& pred : dep.topo) {
        if (tainted.count(pred)) continue;
        for (const GroundRule* r : by_pred[pred])
            if (body_satisfied(*r, fixed)) fixed[r->head] = true;
    }
    for (std::size_t k = 0; k < g.n_atoms(); ++k)
        if (!tainted.count(g.atom_pred[k])) is_fixed[k] = true;

    // candidates: choice atoms, lexicographic on (predicate, atom text)
    std::vector<int> cand;
    for (std::size_t k = 0; k < g.n_atoms(); ++k)
        if (choice_preds.count(g.atom_pred[k])) cand.push_back(static_cast<int>(k));
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        if (g.atom_pred[a] != g.atom_pred[b])
            return g.atom_pred[a] < g.atom_pred[b];
        return g.atom_names[a] < g.atom_names[b];
    });
    std::vector<int> cand_pos(g.n_atoms(), -1);
    for (std::size_t i = 0; i < cand.size(); ++i) cand_pos[cand[i]] = static_cast<int>(i);

    // completion clauses used for pruning: rules whose head is a choice atom
    std::map<int, std::vector<const GroundRule*>> clauses;
    for (const auto& r : g.rules)
        if (r.head >= 0 && cand_pos[r.head] >= 0) clauses[r.head].push_back(&r);

    enum class TV { False, True, Unknown };
    std::vector<signed char> assign(cand.size(), -1); // -1 undecided

    auto atom_tv = [&](int a) -> TV {
        if (cand_pos[a] >= 0) {
            const signed char v = assign[cand_pos[a]];
            return v < 0 ? TV::Unknown : v ? TV::True : TV::False;
        }
        if (is_fixed[a]) return fixed[a] ? TV::True : TV::False;
        return TV::Unknown;
    };
    auto body_tv = [&](const GroundRule& r) -> TV {
        bool unknown = false;
        for (int a : r.pos) {
            const TV v = atom_tv(a);
            if (v == TV::False) return TV::False;
            if (v == TV::Unknown) unknown = true;
        }
        for (int a : r.neg) {
            const TV v = atom_tv(a);
            if (v == TV::True) return TV::False;
            if (v == TV::Unknown) unknown = true;
        }
        return unknown ? TV::Unknown : TV::True;
    };
    auto consistent = [&]() {
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (assign[i] < 0) continue;
            bool possibly_supported = false, decided_all = true;
            for (const GroundRule* r : clauses[cand[i]]) {
                const TV v = body_tv(*r);
                if (v == TV::True) {
                    if (!assign[i]) return false; // false atom with true body
                    possibly_supported = true;
                } else if (v == TV::Unknown) {
                    decided_all = false;
                    possibly_supported = true;
                }
            }
            if (assign[i] && decided_all && !possibly_supported)
                return false; // true atom, every body decidedly false
        }
        return true;
    };

    std::vector<Interp> models;
    std::size_t nodes = 0;

    auto extend_and_check = [&]() {
        Interp m = fixed;
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (assign[i]) m[cand[i]] = true;
        for (const auto& pred : dep.topo) {
            if (!tainted.count(pred) || choice_preds.count(pred)) continue;
            for (const GroundRule* r : by_pred[pred])
                if (body_satisfied(*r, m)) m[r->head] = true;
        }
        if (is_stable(g, m)) models.push_back(std::move(m));
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (++nodes > node_cap)
            throw OracleCapError("choice mode: search node cap of " +
                                 std::to_string(node_cap) + " exceeded");
        if (i == cand.size()) {
            extend_and_check();
            return;
        }
        for (signed char v : {static_cast<signed char>(1),
                              static_cast<signed char>(0)}) {
            assign[i] = v;
            if (consistent()) dfs(i + 1);
        }
        assign[i] = -1;
    };
    dfs(0);
    detail::sort_models(models);
    return models;
}

inline std::vector<Interp> answer_sets(const GroundProgram& g, OracleMode mode,
                                       const DepGraph& dep,
                                       std::size_t subset_cap = 22,
                                       std::size_t choice_cap =
                                           std::size_t{1} << 20) {
    return mode == OracleMode::Subset ? subset_answer_sets(g, subset_cap)
                                      : choice_answer_sets(g, dep, choice_cap);
}

// ── Stratified fast path ────────────────────────────────────────────────────

inline Interp perfect_model(const GroundProgram& g, const DepGraph& dep) {
    for (const auto& scc : dep.sccs)
        if (scc.has_negative_internal_edge)
            throw std::runtime_error(
                "perfect_model: program is not stratified (negation cycle "
                "through " +
                scc.preds.front() + ")");
    std::map<std::string, std::vector<const GroundRule*>> by_pred;
    for (const auto& r : g.rules)
        if (r.head >= 0) by_pred[g.atom_pred[r.head]].push_back(&r);

    Interp m(g.n_atoms(), false);
    // dep.topo lists callees before callers; within one SCC only positive
    // recursion can occur, so iterate that SCC's rules to fixpoint
    std::size_t i = 0;
    while (i < dep.topo.size()) {
        const int scc = dep.scc_of.at(dep.topo[i]);
        std::vector<const GroundRule*> layer;
        std::size_t j = i;
        while (j < dep.topo.size() && dep.scc_of.at(dep.topo[j]) == scc) {
            for (const GroundRule* r : by_pred[dep.topo[j]]) layer.push_back(r);
            ++j;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (const GroundRule* r : layer) {
                if (m[r->head] || !body_satisfied(*r, m)) continue;
                m[r->head] = true;
                changed = true;
            }
        }
        i = j;
    }
    return m;
}

} // namespace aspc

#endif // ASPC_ORACLE_HPP
