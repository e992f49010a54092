// ============================================================================
// aspc/analysis.hpp — safety, finite domains, dependency graph, classification
// ============================================================================
//
// Domain predicates are those defined exclusively by ground facts and never
// appearing in a head of a rule with a nonempty body.  A variable is safe iff
// some positive body literal of a domain predicate contains it; that literal
// is its designated generator (arity-1 generators are preferred, so that a
// variable's domain is a plain column of a fact table whenever possible).
//
// Classification drives synthesis:
//   Hierarchical — dependency graph acyclic among non-domain predicates
//   TightChoice  — cycles exist, every cycle passes a negative edge,
//                  no head-less rule
//   Rejected     — head-less rules, positive cycles, unsafe variables,
//                  underivable domains, arity clashes
//
// ============================================================================

#ifndef ASPC_ANALYSIS_HPP
#define ASPC_ANALYSIS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aspc/ast.hpp"

namespace aspc {

// ── DomainMap ───────────────────────────────────────────────────────────────

struct DomainMap {
    // domain predicate -> fact tuples, in first-occurrence order
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<std::string>>> tuples;

    bool is_domain(const std::string& pred) const {
        return tuples.count(pred) != 0;
    }

    // distinct values of one argument column, first-occurrence order
    std::vector<std::string> column(const std::string& pred,
                                    std::size_t idx) const {
        std::vector<std::string> out;
        auto it = tuples.find(pred);
        if (it == tuples.end()) return out;
        for (const auto& tup : it->second) {
            if (idx >= tup.size()) continue;
            if (std::find(out.begin(), out.end(), tup[idx]) == out.end())
                out.push_back(tup[idx]);
        }
        return out;
    }
};

// Designated generator of a variable within one rule.
struct Generator {
    std::size_t lit_index = 0; // index into rule.body
    std::string pred;
    std::size_t arg_pos = 0;
    std::size_t arity = 1;
};

// var name -> generator, for one rule
using GeneratorMap = std::map<std::string, Generator>;

struct SafetyReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// ── DepGraph ────────────────────────────────────────────────────────────────

struct DepEdge {
    std::string from, to;
    bool negative = false;
};

struct Scc {
    std::vector<std::string> preds;
    bool has_internal_edge = false;
    bool has_negative_internal_edge = false;
    bool has_positive_internal_cycle = false;
};

struct DepGraph {
    std::vector<std::string> nodes; // sorted
    std::vector<DepEdge> edges;
    std::map<std::string, int> scc_of;
    std::vector<Scc> sccs;
    // predicate order consistent with every dependency edge (callee first);
    // deterministic: condensation topological order, lexicographic tie-break
    std::vector<std::string> topo;
};

// ── ProgramClass ────────────────────────────────────────────────────────────

struct ProgramClass {
    enum class Kind { Hierarchical, TightChoice, Rejected };
    Kind kind = Kind::Hierarchical;
    std::vector<int> choice_sccs;      // indices into DepGraph::sccs
    std::vector<std::string> reasons;  // nonempty iff Rejected

    bool rejected() const { return kind == Kind::Rejected; }
};

struct Analysis {
    SafetyReport safety;
    DomainMap domains;
    DepGraph graph;
    ProgramClass cls;
    std::map<std::string, std::size_t> arity;
    // per predicate, per argument position: the values that position can take
    std::map<std::string, std::vector<std::vector<std::string>>> arg_domains;
};

namespace detail {

inline void collect_arities(const Program& p, Analysis& a,
                            std::vector<std::string>& clashes) {
    auto note = [&](const Atom& at) {
        auto it = a.arity.find(at.pred);
        if (it == a.arity.end()) {
            a.arity[at.pred] = at.args.size();
        } else if (it->second != at.args.size()) {
            const std::string msg =
                "inconsistent arity for predicate " + at.pred;
            if (std::find(clashes.begin(), clashes.end(), msg) == clashes.end())
                clashes.push_back(msg);
        }
    };
    for (const auto& r : p.rules) {
        if (r.head) note(*r.head);
        for (const auto& l : r.body)
            if (!l.is_cmp()) note(l.atom);
    }
}

inline DomainMap extract_domains_impl(const Program& p) {
    // a predicate is a domain predicate iff every rule with it in the head is
    // a ground fact, and it has at least one such fact
    std::set<std::string> disqualified;
    std::vector<std::string> seen;
    for (const auto& r : p.rules) {
        if (!r.head) continue;
        const std::string& pred = r.head->pred;
        if (std::find(seen.begin(), seen.end(), pred) == seen.end())
            seen.push_back(pred);
        if (!r.body.empty() || !r.head->ground()) disqualified.insert(pred);
    }
    DomainMap d;
    for (const auto& pred : seen) {
        if (disqualified.count(pred)) continue;
        d.order.push_back(pred);
        d.tuples[pred] = {};
    }
    for (const auto& r : p.rules) {
        if (!r.is_fact() || !d.is_domain(r.head->pred)) continue;
        std::vector<std::string> tup;
        for (const auto& t : r.head->args) tup.push_back(t.name);
        d.tuples[r.head->pred].push_back(tup);
    }
    return d;
}

// variables of a term list, appended in order without duplicates
inline void vars_of(const std::vector<Term>& ts, std::vector<std::string>& out) {
    for (const auto& t : ts)
        if (t.is_var() &&
            std::find(out.begin(), out.end(), t.name) == out.end())
            out.push_back(t.name);
}

inline std::vector<std::string> rule_vars(const Rule& r) {
    std::vector<std::string> vs;
    if (r.head) vars_of(r.head->args, vs);
    for (const auto& l : r.body) {
        if (l.is_cmp()) {
            vars_of({l.left, l.right}, vs);
        } else {
            vars_of(l.atom.args, vs);
        }
    }
    return vs;
}

} // namespace detail

// Designated generators for one rule's variables.  Arity-1 domain literals
// win over wider ones; ties break by body position.
inline GeneratorMap generator_map(const Rule& r, const DomainMap& d) {
    GeneratorMap g;
    auto scan = [&](bool only_unary) {
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            const Literal& l = r.body[i];
            if (!l.positive() || !d.is_domain(l.atom.pred)) continue;
            if (only_unary != (l.atom.args.size() == 1)) continue;
            for (std::size_t j = 0; j < l.atom.args.size(); ++j) {
                const Term& t = l.atom.args[j];
                if (!t.is_var() || g.count(t.name)) continue;
                g[t.name] = {i, l.atom.pred, j, l.atom.args.size()};
            }
        }
    };
    scan(true);
    scan(false);
    return g;
}

inline std::vector<std::string> variable_domain(const Generator& g,
                                                const DomainMap& d) {
    return d.column(g.pred, g.arg_pos);
}

// Variables bound by equality chains rather than by a generator (head
// normalization introduces `Vi = t` bodies): maps each such variable to its
// resolution, which is either a constant or a generator-bound variable.
inline std::map<std::string, Term> rule_aliases(const Rule& r,
                                                const GeneratorMap& g) {
    std::map<std::string, Term> alias;
    auto resolved = [&](const Term& t) -> std::optional<Term> {
        if (!t.is_var()) return t;
        if (g.count(t.name)) return t;
        auto it = alias.find(t.name);
        if (it != alias.end()) return it->second;
        return std::nullopt;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& l : r.body) {
            if (!l.is_cmp() || l.op != CmpOp::Eq) continue;
            const auto lv = resolved(l.left), rv = resolved(l.right);
            if (l.left.is_var() && !lv && rv) {
                alias[l.left.name] = *rv;
                changed = true;
            } else if (l.right.is_var() && !rv && lv) {
                alias[l.right.name] = *lv;
                changed = true;
            }
        }
    }
    return alias;
}

inline SafetyReport check_safety(const Program& p) {
    const DomainMap d = detail::extract_domains_impl(p);
    SafetyReport rep;
    for (const auto& r : p.rules) {
        if (r.is_fact() && !r.head->ground())
            rep.violations.push_back("fact head not ground at line " +
                                     std::to_string(r.line));
        const GeneratorMap g = generator_map(r, d);
        const std::map<std::string, Term> alias = rule_aliases(r, g);
        for (const auto& v : detail::rule_vars(r)) {
            if (g.count(v) || alias.count(v)) continue;
            // distinguish "no positive occurrence at all" from "the only
            // generators are derived predicates" (underivable domain)
            bool derived_generator = false;
            for (const auto& l : r.body) {
                if (!l.positive()) continue;
                for (const auto& t : l.atom.args)
                    if (t.is_var() && t.name == v) derived_generator = true;
            }
            if (derived_generator)
                rep.violations.push_back(
                    "underivable domain: variable " + v + " at line " +
                    std::to_string(r.line) +
                    " is generated only by derived predicates");
            else
                rep.violations.push_back("unsafe variable " + v + " at line " +
                                         std::to_string(r.line));
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

inline DomainMap extract_domains(const Program& p) {
    return detail::extract_domains_impl(p);
}

// ── Dependency graph ────────────────────────────────────────────────────────

inline DepGraph dependency_graph(const Program& p) {
    DepGraph g;
    std::set<std::string> nodes;
    std::set<std::pair<std::pair<std::string, std::string>, bool>> seen;
    for (const auto& r : p.rules) {
        if (r.head) nodes.insert(r.head->pred);
        for (const auto& l : r.body)
            if (!l.is_cmp()) nodes.insert(l.atom.pred);
        if (!r.head) continue;
        for (const auto& l : r.body) {
            if (l.is_cmp()) continue;
            auto key = std::make_pair(
                std::make_pair(r.head->pred, l.atom.pred), l.negated());
            if (seen.insert(key).second)
                g.edges.push_back({r.head->pred, l.atom.pred, l.negated()});
        }
    }
    g.nodes.assign(nodes.begin(), nodes.end());

    // Tarjan SCC over adjacency (deterministic: nodes and successors sorted)
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& n : g.nodes) adj[n];
    for (const auto& e : g.edges) adj[e.from].push_back(e.to);
    for (auto& [n, succ] : adj) std::sort(succ.begin(), succ.end());

    std::map<std::string, int> index, low;
    std::vector<std::string> stack;
    std::set<std::string> on_stack;
    int counter = 0;

    struct Frame {
        std::string node;
        std::size_t next = 0;
    };
    for (const auto& root : g.nodes) {
        if (index.count(root)) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack.insert(root);
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = adj[f.node];
            if (f.next < succ.size()) {
                const std::string& w = succ[f.next++];
                if (!index.count(w)) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack.insert(w);
                    call.push_back({w, 0});
                } else if (on_stack.count(w)) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                if (low[f.node] == index[f.node]) {
                    Scc scc;
                    while (true) {
                        std::string w = stack.back();
                        stack.pop_back();
                        on_stack.erase(w);
                        scc.preds.push_back(w);
                        if (w == f.node) break;
                    }
                    std::sort(scc.preds.begin(), scc.preds.end());
                    for (const auto& n : scc.preds)
                        g.scc_of[n] = static_cast<int>(g.sccs.size());
                    g.sccs.push_back(std::move(scc));
                }
                std::string done = f.node;
                call.pop_back();
                if (!call.empty())
                    low[call.back().node] =
                        std::min(low[call.back().node], low[done]);
            }
        }
    }

    // internal-edge flags
    for (const auto& e : g.edges) {
        if (g.scc_of[e.from] != g.scc_of[e.to]) continue;
        Scc& s = g.sccs[g.scc_of[e.from]];
        s.has_internal_edge = true;
        if (e.negative) s.has_negative_internal_edge = true;
    }
    // positive cycles: SCCs of the positive-only subgraph
    {
        std::map<std::string, std::vector<std::string>> pos_adj;
        for (const auto& n : g.nodes) pos_adj[n];
        for (const auto& e : g.edges)
            if (!e.negative) pos_adj[e.from].push_back(e.to);
        // a positive cycle exists inside an SCC iff some node can reach
        // itself via positive edges within that SCC
        for (auto& scc : g.sccs) {
            if (!scc.has_internal_edge) continue;
            std::set<std::string> members(scc.preds.begin(), scc.preds.end());
            for (const auto& start : scc.preds) {
                std::vector<std::string> work{start};
                std::set<std::string> visited;
                bool found = false;
                while (!work.empty() && !found) {
                    std::string n = work.back();
                    work.pop_back();
                    for (const auto& w : pos_adj[n]) {
                        if (!members.count(w)) continue;
                        if (w == start) {
                            found = true;
                            break;
                        }
                        if (visited.insert(w).second) work.push_back(w);
                    }
                }
                if (found) {
                    scc.has_positive_internal_cycle = true;
                    break;
                }
            }
        }
    }

    // deterministic topological order of predicates (callees first):
    // Kahn over the condensation, smallest SCC (by lexicographically first
    // member) chosen next
    {
        const int n_scc = static_cast<int>(g.sccs.size());
        std::vector<std::set<int>> deps(n_scc); // scc -> sccs it depends on
        for (const auto& e : g.edges) {
            int a = g.scc_of[e.from], b = g.scc_of[e.to];
            if (a != b) deps[a].insert(b);
        }
        std::vector<bool> emitted(n_scc, false);
        for (int done = 0; done < n_scc;) {
            int best = -1;
            for (int i = 0; i < n_scc; ++i) {
                if (emitted[i]) continue;
                bool ready = true;
                for (int dep : deps[i])
                    if (!emitted[dep]) ready = false;
                if (!ready) continue;
                if (best < 0 ||
                    g.sccs[i].preds.front() < g.sccs[best].preds.front())
                    best = i;
            }
            emitted[best] = true;
            ++done;
            for (const auto& pred : g.sccs[best].preds) g.topo.push_back(pred);
        }
    }
    return g;
}

// ── Classification ──────────────────────────────────────────────────────────

inline ProgramClass classify(const Program& p, const DepGraph& g) {
    ProgramClass c;
    const SafetyReport safety = check_safety(p);
    std::vector<std::string> arity_clashes;
    {
        Analysis tmp;
        detail::collect_arities(p, tmp, arity_clashes);
    }
    for (const auto& v : safety.violations) c.reasons.push_back(v);
    for (const auto& v : arity_clashes) c.reasons.push_back(v);
    for (const auto& r : p.rules)
        if (r.is_constraint())
            c.reasons.push_back("head-less rule at line " +
                                std::to_string(r.line));
    for (const auto& scc : g.sccs) {
        if (scc.has_positive_internal_cycle) {
            std::string msg = "positive cycle through predicates:";
            for (const auto& pr : scc.preds) msg += " " + pr;
            c.reasons.push_back(msg);
        }
    }
    if (!c.reasons.empty()) {
        c.kind = ProgramClass::Kind::Rejected;
        return c;
    }
    for (std::size_t i = 0; i < g.sccs.size(); ++i)
        if (g.sccs[i].has_internal_edge)
            c.choice_sccs.push_back(static_cast<int>(i));
    c.kind = c.choice_sccs.empty() ? ProgramClass::Kind::Hierarchical
                                   : ProgramClass::Kind::TightChoice;
    return c;
}

// ── Argument domains ────────────────────────────────────────────────────────

namespace detail {

inline void add_values(std::vector<std::string>& dst,
                       const std::vector<std::string>& src) {
    for (const auto& v : src)
        if (std::find(dst.begin(), dst.end(), v) == dst.end())
            dst.push_back(v);
}

inline std::map<std::string, std::vector<std::vector<std::string>>>
compute_arg_domains(const Program& p, const DomainMap& d,
                    const std::map<std::string, std::size_t>& arity) {
    std::map<std::string, std::vector<std::vector<std::string>>> out;
    for (const auto& [pred, k] : arity)
        out[pred].resize(k);
    for (const auto& pred : d.order)
        for (std::size_t j = 0; j < out[pred].size(); ++j)
            out[pred][j] = d.column(pred, j);
    auto note_term = [&](const std::string& pred, std::size_t j, Term t,
                         const GeneratorMap& g,
                         const std::map<std::string, Term>& alias) {
        if (t.is_var())
            if (auto it = alias.find(t.name); it != alias.end())
                t = it->second; // equality-bound: use the resolution
        if (!t.is_var()) {
            add_values(out[pred][j], {t.name});
        } else if (auto it = g.find(t.name); it != g.end()) {
            add_values(out[pred][j], variable_domain(it->second, d));
        }
    };
    for (const auto& r : p.rules) {
        const GeneratorMap g = generator_map(r, d);
        const std::map<std::string, Term> alias = rule_aliases(r, g);
        if (r.head && !d.is_domain(r.head->pred))
            for (std::size_t j = 0; j < r.head->args.size(); ++j)
                note_term(r.head->pred, j, r.head->args[j], g, alias);
        for (const auto& l : r.body) {
            if (l.is_cmp() || d.is_domain(l.atom.pred)) continue;
            for (std::size_t j = 0; j < l.atom.args.size(); ++j)
                note_term(l.atom.pred, j, l.atom.args[j], g, alias);
        }
    }
    return out;
}

} // namespace detail

inline Analysis analyze(const Program& p) {
    Analysis a;
    std::vector<std::string> clashes;
    detail::collect_arities(p, a, clashes);
    a.safety = check_safety(p);
    a.domains = extract_domains(p);
    a.graph = dependency_graph(p);
    a.cls = classify(p, a.graph);
    a.arg_domains = detail::compute_arg_domains(p, a.domains, a.arity);
    return a;
}

// all ground argument tuples of a predicate over its argument domains
inline std::vector<std::vector<std::string>> atom_universe(
    const Analysis& a, const std::string& pred) {
    std::vector<std::vector<std::string>> out;
    auto it = a.arg_domains.find(pred);
    if (it == a.arg_domains.end()) return out;
    const auto& doms = it->second;
    std::vector<std::vector<std::string>> acc{{}};
    for (const auto& col : doms) {
        std::vector<std::vector<std::string>> next;
        for (const auto& partial : acc)
            for (const auto& v : col) {
                auto t = partial;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        acc = std::move(next);
    }
    if (!doms.empty() && acc.size() == 1 && acc[0].empty()) return out;
    return acc;
}

inline std::size_t herbrand_size(const Analysis& a) {
    std::size_t n = 0;
    for (const auto& [pred, doms] : a.arg_domains) {
        std::size_t m = 1;
        for (const auto& col : doms) m *= col.size();
        n += m;
    }
    return n;
}

} // namespace aspc

#endif // ASPC_ANALYSIS_HPP
