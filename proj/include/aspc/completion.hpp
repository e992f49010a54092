// ============================================================================
// aspc/completion.hpp — dual rules and forall goals
// ============================================================================
//
// For a predicate p with normalized rules R1..Rn the dual is a conjunction
// across rules and a disjunction across the literals of each rule:
//
//   __not_p(V̄)  :- __nr1_p(V̄), ..., __nrn_p(V̄).
//   __nri_p(V̄)  :- negate(Lj).                      (one clause per literal)
//
// When Ri has body-only variables Ȳ, their quantifier flips to a forall:
//
//   __nri_p(V̄)  :- forall(Ȳ, __nbi_p(V̄, Ȳ)).
//   __nbi_p(V̄,Ȳ) :- G1, ..., Gk, negate(Lj).        (generators stay positive)
//
// A generator literal whose truth is not guaranteed by the enumeration (it is
// not a unary generator feeding the enumerated variable, or the predicate's
// argument domain is wider than the generator column) additionally gets a
// clause __nbi :- negate(G), so the forall reads "generators imply some
// negated literal" rather than requiring the generators outright.
//
// Generated names live in the reserved "__" namespace; the parser refuses
// user programs that touch it, which makes re-dualizing impossible.
//
// ============================================================================

#ifndef ASPC_COMPLETION_HPP
#define ASPC_COMPLETION_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"

namespace aspc {

// ── Types ───────────────────────────────────────────────────────────────────

struct BoundVar {
    std::string var;
    std::string domain_pred;
    std::size_t column = 0;
};

// body element of a generated rule: a plain literal or a forall goal whose
// inner goal is a call to a generated helper predicate
struct CLiteral {
    enum class Kind { Lit, Forall };
    Kind kind = Kind::Lit;
    Literal lit;
    std::vector<BoundVar> bound; // Forall
    Atom inner;                  // Forall

    static CLiteral wrap(Literal l) {
        CLiteral c;
        c.kind = Kind::Lit;
        c.lit = std::move(l);
        return c;
    }
    static CLiteral forall(std::vector<BoundVar> bound, Atom inner) {
        CLiteral c;
        c.kind = Kind::Forall;
        c.bound = std::move(bound);
        c.inner = std::move(inner);
        return c;
    }
};

struct CRule {
    Atom head;
    std::vector<CLiteral> body;
};

struct DualGroup {
    std::string pred;
    std::size_t arity = 0;
    std::vector<std::string> head_vars;           // canonical V̄
    std::vector<Rule> rules;                      // canonicalized defining rules
    CRule not_rule;                               // __not_p(V̄) :- ...
    std::vector<std::vector<CRule>> rule_neg;     // per rule: __nri_p clauses
    std::vector<std::vector<CRule>> forall_body;  // per rule: __nbi_p clauses
};

struct CompletionProgram {
    Program original; // head-normalized (ground facts kept as written)
    std::vector<DualGroup> groups;
    std::map<std::string, std::string> name_map; // pred -> __not_<pred>
    // every generated rule indexed by head predicate, for resolution
    std::map<std::string, std::vector<CRule>> clause_index;

    const std::vector<CRule>* clauses_for(const std::string& head) const {
        auto it = clause_index.find(head);
        return it == clause_index.end() ? nullptr : &it->second;
    }
};

// ── negate_literal ──────────────────────────────────────────────────────────

inline Literal negate_literal(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Pos: return Literal::neg(l.atom);
        case Literal::Kind::Neg: return Literal::pos(l.atom);
        case Literal::Kind::Cmp:
            return Literal::cmp(l.left, cmp_complement(l.op), l.right);
    }
    return l;
}

// ── normalize_heads ─────────────────────────────────────────────────────────

namespace detail {

inline std::set<std::string> rule_var_set(const Rule& r) {
    std::vector<std::string> vs = rule_vars(r);
    return {vs.begin(), vs.end()};
}

inline std::string fresh_var(const std::set<std::string>& used, int& counter) {
    while (true) {
        std::string v = "V" + std::to_string(++counter);
        if (!used.count(v)) return v;
    }
}

inline bool distinct_var_head(const Atom& head) {
    std::set<std::string> seen;
    for (const auto& t : head.args) {
        if (!t.is_var()) return false;
        if (!seen.insert(t.name).second) return false;
    }
    return true;
}

} // namespace detail

inline Program normalize_heads(const Program& p) {
    Program out;
    for (const auto& r : p.rules) {
        if (!r.head || r.is_fact() || detail::distinct_var_head(*r.head)) {
            out.rules.push_back(r);
            continue;
        }
        Rule nr;
        nr.line = r.line;
        const std::set<std::string> used = detail::rule_var_set(r);
        int counter = 0;
        Atom head;
        head.pred = r.head->pred;
        std::vector<Literal> eqs;
        for (const auto& t : r.head->args) {
            std::string v = detail::fresh_var(used, counter);
            head.args.push_back(Term::var(v));
            eqs.push_back(Literal::cmp(Term::var(v), CmpOp::Eq, t));
        }
        nr.head = std::move(head);
        nr.body = std::move(eqs);
        nr.body.insert(nr.body.end(), r.body.begin(), r.body.end());
        out.rules.push_back(std::move(nr));
    }

    // Body-only variables bound purely by equality chains are replaced by
    // their resolution, so every remaining body-only variable has a
    // generator.  Head variables keep their equality literals: those are the
    // link normalization itself introduced.
    const DomainMap d = extract_domains(out);
    for (auto& r : out.rules) {
        if (r.body.empty()) continue;
        const GeneratorMap g = generator_map(r, d);
        const std::map<std::string, Term> alias = rule_aliases(r, g);
        if (alias.empty()) continue;
        std::set<std::string> head_vars;
        if (r.head)
            for (const auto& t : r.head->args)
                if (t.is_var()) head_vars.insert(t.name);
        auto subst = [&](Term& t) {
            if (!t.is_var() || head_vars.count(t.name)) return;
            auto it = alias.find(t.name);
            if (it != alias.end()) t = it->second;
        };
        for (auto& l : r.body) {
            if (l.is_cmp()) {
                subst(l.left);
                subst(l.right);
            } else {
                for (auto& t : l.atom.args) subst(t);
            }
        }
    }
    return out;
}

// ── dualize ─────────────────────────────────────────────────────────────────

namespace detail {

inline Term subst_term(const Term& t,
                       const std::map<std::string, std::string>& ren) {
    if (!t.is_var()) return t;
    auto it = ren.find(t.name);
    return it == ren.end() ? t : Term::var(it->second);
}

inline Literal subst_literal(const Literal& l,
                             const std::map<std::string, std::string>& ren) {
    if (l.is_cmp())
        return Literal::cmp(subst_term(l.left, ren), l.op,
                            subst_term(l.right, ren));
    Atom a;
    a.pred = l.atom.pred;
    for (const auto& t : l.atom.args) a.args.push_back(subst_term(t, ren));
    return l.positive() ? Literal::pos(a) : Literal::neg(a);
}

// Rewrite one defining rule of `pred` so its head is exactly
// pred(canonical...).  Ground facts turn into equality bodies; body-only
// variables colliding with canonical names are freshened first.
inline Rule canonicalize_rule(const Rule& r,
                              const std::vector<std::string>& canonical) {
    Rule out;
    out.line = r.line;
    Atom head;
    head.pred = r.head->pred;
    for (const auto& v : canonical) head.args.push_back(Term::var(v));
    out.head = head;

    if (r.is_fact()) {
        for (std::size_t j = 0; j < r.head->args.size(); ++j)
            out.body.push_back(Literal::cmp(Term::var(canonical[j]), CmpOp::Eq,
                                            r.head->args[j]));
        return out;
    }

    std::map<std::string, std::string> ren;
    std::set<std::string> used = rule_var_set(r);
    used.insert(canonical.begin(), canonical.end());
    int counter = 0;
    const std::set<std::string> canon_set(canonical.begin(), canonical.end());
    std::set<std::string> head_vars;
    for (const auto& t : r.head->args) head_vars.insert(t.name);
    for (const auto& v : rule_vars(r)) {
        if (head_vars.count(v)) continue;
        if (canon_set.count(v)) ren[v] = fresh_var(used, counter);
    }
    for (std::size_t j = 0; j < r.head->args.size(); ++j)
        ren[r.head->args[j].name] = canonical[j];
    for (const auto& l : r.body) out.body.push_back(subst_literal(l, ren));
    return out;
}

} // namespace detail

inline std::string dual_name(const std::string& pred) { return "__not_" + pred; }

// ── rule shape ──────────────────────────────────────────────────────────────
// Per-rule generator structure, shared between dual construction and code
// synthesis so the two can never disagree about which generator literals are
// merely enumeration scaffolding.

struct RuleShape {
    GeneratorMap gmap;                 // variable -> designated generator
    std::set<std::size_t> gen_idx;     // body indices of generator literals
    std::set<std::size_t> assured_idx; // generators implied by enumeration
    std::vector<std::string> body_only; // non-head variables, first-use order
};

// Structural agreement of head-position generators across a predicate's
// rules: position j of pred p is "assured by q" when every rule of p binds
// position j to a variable generated by a unary domain literal on q.
inline std::string assured_generator_for_position(const Program& normalized,
                                                  const DomainMap& d,
                                                  const std::string& pred,
                                                  std::size_t j) {
    std::string q;
    for (const auto& r : normalized.rules) {
        if (!r.head || r.head->pred != pred) continue;
        if (r.is_fact() || j >= r.head->args.size())
            return ""; // constant at this position (or arity clash)
        const Term& t = r.head->args[j];
        if (!t.is_var()) return "";
        const GeneratorMap g = generator_map(r, d);
        auto it = g.find(t.name);
        if (it == g.end() || it->second.arity != 1) return "";
        if (q.empty())
            q = it->second.pred;
        else if (q != it->second.pred)
            return "";
    }
    return q;
}

inline RuleShape rule_shape(const Rule& canonical,
                            const std::vector<std::string>& head_vars,
                            const std::string& pred,
                            const Program& normalized,
                            const DomainMap& d) {
    RuleShape s;
    s.gmap = generator_map(canonical, d);
    for (const auto& [v, g] : s.gmap) s.gen_idx.insert(g.lit_index);

    const std::set<std::string> head_var_set(head_vars.begin(),
                                             head_vars.end());
    for (const auto& v : detail::rule_vars(canonical))
        if (!head_var_set.count(v)) s.body_only.push_back(v);

    for (std::size_t idx : s.gen_idx) {
        const Literal& l = canonical.body[idx];
        if (l.atom.args.size() != 1) continue;
        const Term& t = l.atom.args[0];
        if (!t.is_var()) continue;
        auto it = s.gmap.find(t.name);
        if (it == s.gmap.end() || it->second.lit_index != idx) continue;
        if (head_var_set.count(t.name)) {
            const auto pos = std::find(head_vars.begin(), head_vars.end(),
                                       t.name) -
                             head_vars.begin();
            if (assured_generator_for_position(
                    normalized, d, pred, static_cast<std::size_t>(pos)) ==
                l.atom.pred)
                s.assured_idx.insert(idx);
        } else {
            // the body-only variable enumerates this very column
            s.assured_idx.insert(idx);
        }
    }
    return s;
}

inline CompletionProgram dualize(const Program& normalized, const DomainMap& d) {
    for (const auto& r : normalized.rules) {
        if (r.head && r.head->pred.rfind("__", 0) == 0)
            throw std::runtime_error(
                "program already contains generated predicates; refusing to "
                "dualize twice");
    }

    CompletionProgram cp;
    cp.original = normalized;
    const Analysis a = [&] {
        Analysis an;
        std::vector<std::string> clashes;
        detail::collect_arities(normalized, an, clashes);
        return an;
    }();

    // predicates in first-occurrence order (heads, then body atoms)
    std::vector<std::string> preds;
    auto note = [&](const std::string& p) {
        if (std::find(preds.begin(), preds.end(), p) == preds.end())
            preds.push_back(p);
    };
    for (const auto& r : normalized.rules)
        if (r.head) note(r.head->pred);
    for (const auto& r : normalized.rules)
        for (const auto& l : r.body)
            if (!l.is_cmp()) note(l.atom.pred);

    for (const auto& pred : preds) {
        DualGroup grp;
        grp.pred = pred;
        grp.arity = a.arity.count(pred) ? a.arity.at(pred) : 0;
        cp.name_map[pred] = dual_name(pred);

        // canonical head variables: first defining rule's names when they are
        // already distinct variables, otherwise V1..Vk
        std::vector<const Rule*> defs;
        for (const auto& r : normalized.rules)
            if (r.head && r.head->pred == pred) defs.push_back(&r);
        if (!defs.empty() && !defs.front()->is_fact() &&
            detail::distinct_var_head(*defs.front()->head)) {
            for (const auto& t : defs.front()->head->args)
                grp.head_vars.push_back(t.name);
        } else {
            for (std::size_t j = 0; j < grp.arity; ++j)
                grp.head_vars.push_back("V" + std::to_string(j + 1));
        }

        Atom not_head;
        not_head.pred = dual_name(pred);
        for (const auto& v : grp.head_vars) not_head.args.push_back(Term::var(v));
        grp.not_rule.head = not_head;

        if (defs.empty()) {
            // undefined predicate: dual holds unconditionally, guarded by the
            // unary domain generators its call sites feed it from
            for (std::size_t j = 0; j < grp.arity; ++j) {
                for (const auto& r : normalized.rules) {
                    const GeneratorMap g = generator_map(r, d);
                    bool done = false;
                    for (const auto& l : r.body) {
                        if (l.is_cmp() || l.atom.pred != pred) continue;
                        const Term& t = l.atom.args[j];
                        if (!t.is_var()) continue;
                        auto it = g.find(t.name);
                        if (it == g.end() || it->second.arity != 1) continue;
                        Atom guard;
                        guard.pred = it->second.pred;
                        guard.args.push_back(Term::var(grp.head_vars[j]));
                        grp.not_rule.body.push_back(
                            CLiteral::wrap(Literal::pos(guard)));
                        done = true;
                        break;
                    }
                    if (done) break;
                }
            }
        }

        int rule_no = 0;
        for (const Rule* def : defs) {
            ++rule_no;
            const Rule rule = detail::canonicalize_rule(*def, grp.head_vars);
            grp.rules.push_back(rule);
            const std::string nr_name =
                "__nr" + std::to_string(rule_no) + "_" + pred;
            Atom nr_head = not_head;
            nr_head.pred = nr_name;
            grp.not_rule.body.push_back(
                CLiteral::wrap(Literal::pos(nr_head)));

            const RuleShape shape =
                rule_shape(rule, grp.head_vars, pred, normalized, d);
            const GeneratorMap& gmap = shape.gmap;
            const std::vector<std::string>& body_only = shape.body_only;

            std::vector<CRule> nr_clauses;
            std::vector<CRule> nb_clauses;

            if (body_only.empty()) {
                for (const auto& l : rule.body) {
                    CRule c;
                    c.head = nr_head;
                    c.body.push_back(CLiteral::wrap(negate_literal(l)));
                    nr_clauses.push_back(std::move(c));
                }
            } else {
                const std::string nb_name =
                    "__nb" + std::to_string(rule_no) + "_" + pred;
                Atom nb_head;
                nb_head.pred = nb_name;
                for (const auto& v : grp.head_vars)
                    nb_head.args.push_back(Term::var(v));
                for (const auto& v : body_only)
                    nb_head.args.push_back(Term::var(v));

                std::vector<BoundVar> bound;
                for (const auto& v : body_only) {
                    const Generator& g = gmap.at(v);
                    bound.push_back({v, g.pred, g.arg_pos});
                }
                CRule fr;
                fr.head = nr_head;
                fr.body.push_back(CLiteral::forall(bound, nb_head));
                nr_clauses.push_back(std::move(fr));

                std::vector<Literal> gens;
                for (std::size_t i = 0; i < rule.body.size(); ++i)
                    if (shape.gen_idx.count(i)) gens.push_back(rule.body[i]);

                for (std::size_t i = 0; i < rule.body.size(); ++i) {
                    if (!shape.gen_idx.count(i)) continue;
                    if (shape.assured_idx.count(i)) continue;
                    CRule c;
                    c.head = nb_head;
                    c.body.push_back(CLiteral::wrap(negate_literal(rule.body[i])));
                    nb_clauses.push_back(std::move(c));
                }
                for (std::size_t i = 0; i < rule.body.size(); ++i) {
                    if (shape.gen_idx.count(i)) continue;
                    CRule c;
                    c.head = nb_head;
                    for (const auto& g : gens)
                        c.body.push_back(CLiteral::wrap(g));
                    c.body.push_back(CLiteral::wrap(negate_literal(rule.body[i])));
                    nb_clauses.push_back(std::move(c));
                }
            }

            grp.rule_neg.push_back(std::move(nr_clauses));
            grp.forall_body.push_back(std::move(nb_clauses));
        }

        cp.groups.push_back(std::move(grp));
    }

    for (const auto& grp : cp.groups) {
        cp.clause_index[grp.not_rule.head.pred].push_back(grp.not_rule);
        for (const auto& clauses : grp.rule_neg)
            for (const auto& c : clauses) cp.clause_index[c.head.pred].push_back(c);
        for (const auto& clauses : grp.forall_body)
            for (const auto& c : clauses) cp.clause_index[c.head.pred].push_back(c);
    }
    return cp;
}

inline CompletionProgram build_completion(const Program& p, const DomainMap& d) {
    return dualize(normalize_heads(p), d);
}

// ── Rendering ───────────────────────────────────────────────────────────────

inline std::string render(const CLiteral& c) {
    if (c.kind == CLiteral::Kind::Lit) return render(c.lit);
    std::string out = "forall(";
    for (const auto& b : c.bound) out += b.var + ", ";
    out += render(c.inner) + ")";
    return out;
}

inline std::string render(const CRule& r) {
    std::string out = render(r.head);
    if (!r.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += render(r.body[i]);
        }
    }
    out += ".";
    return out;
}

inline std::string render(const CompletionProgram& cp) {
    std::string out = render(cp.original);
    for (const auto& grp : cp.groups) {
        out += "\n% dual of " + grp.pred + "\n";
        out += render(grp.not_rule) + "\n";
        for (const auto& clauses : grp.rule_neg)
            for (const auto& c : clauses) out += render(c) + "\n";
        for (const auto& clauses : grp.forall_body)
            for (const auto& c : clauses) out += render(c) + "\n";
    }
    return out;
}

} // namespace aspc

#endif // ASPC_COMPLETION_HPP
