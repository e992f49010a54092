// ============================================================================
// aspc/synth.hpp — imperative code synthesis, interpretation, and emission
// ============================================================================
//
// Hierarchical programs compile to per-predicate decision procedures:
// check_<p> answers the positive query, check_not_<p> the dual.  Forall goals
// become loops over domain columns; everything else becomes conditionals.
//
// Tight-choice programs additionally get a backtracking Search over the
// ground atoms of the choice predicates.  The search assigns candidates in
// lexicographic order (true branch first), prunes partial assignments with
// tri-valued completion clauses, and at each leaf confirms supportedness with
// the compiled supported_<p> procedures before sweeping the deterministic
// remainder of the model.  On tight programs supported models are exactly the
// stable models, which is what makes the Search sound.
//
// The same IR is both interpretable (for differential testing against the
// ground semantics) and printable (plain style, or the compact paper style
// with `def`/`True`/`False` and the check_ prefix stripped).
//
// ============================================================================

#ifndef ASPC_SYNTH_HPP
#define ASPC_SYNTH_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"
#include "aspc/completion.hpp"

namespace aspc {

// ── Errors ──────────────────────────────────────────────────────────────────

struct SynthRejected : std::runtime_error {
    std::vector<std::string> reasons;
    explicit SynthRejected(std::vector<std::string> rs)
        : std::runtime_error(join(rs)), reasons(std::move(rs)) {}

    static std::string join(const std::vector<std::string>& rs) {
        std::string out = "program rejected";
        for (const auto& r : rs) out += "\n  - " + r;
        return out;
    }
};

struct SearchCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ── IR: values, conditions, statements ──────────────────────────────────────

struct IValue {
    bool is_var = false;
    std::string text;

    static IValue var(std::string n) { return {true, std::move(n)}; }
    static IValue cst(std::string n) { return {false, std::move(n)}; }

    friend bool operator==(const IValue& a, const IValue& b) {
        return a.is_var == b.is_var && a.text == b.text;
    }
};

struct ICond {
    enum class Kind { Const, Cmp, Call, InTable, Lookup, Not, And };
    Kind kind = Kind::Const;
    bool bval = false;            // Const
    IValue left, right;           // Cmp
    CmpOp op = CmpOp::Lt;         // Cmp
    std::string name;             // Call: proc; InTable: table; Lookup: pred
    std::vector<IValue> args;     // Call / InTable / Lookup
    std::vector<ICond> kids;      // Not (1) / And (n)

    static ICond cconst(bool b) {
        ICond c;
        c.kind = Kind::Const;
        c.bval = b;
        return c;
    }
    static ICond ccmp(IValue l, CmpOp o, IValue r) {
        ICond c;
        c.kind = Kind::Cmp;
        c.left = std::move(l);
        c.op = o;
        c.right = std::move(r);
        return c;
    }
    static ICond ccall(std::string proc, std::vector<IValue> as) {
        ICond c;
        c.kind = Kind::Call;
        c.name = std::move(proc);
        c.args = std::move(as);
        return c;
    }
    static ICond in_table(std::string table, std::vector<IValue> as) {
        ICond c;
        c.kind = Kind::InTable;
        c.name = std::move(table);
        c.args = std::move(as);
        return c;
    }
    static ICond lookup(std::string pred, std::vector<IValue> as) {
        ICond c;
        c.kind = Kind::Lookup;
        c.name = std::move(pred);
        c.args = std::move(as);
        return c;
    }
    static ICond cnot(ICond sub) {
        ICond c;
        c.kind = Kind::Not;
        c.kids.push_back(std::move(sub));
        return c;
    }
    static ICond cand(std::vector<ICond> ks) {
        if (ks.empty()) return cconst(true);
        if (ks.size() == 1) return std::move(ks[0]);
        ICond c;
        c.kind = Kind::And;
        c.kids = std::move(ks);
        return c;
    }

    friend bool operator==(const ICond& a, const ICond& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Const: return a.bval == b.bval;
            case Kind::Cmp:
                return a.left == b.left && a.op == b.op && a.right == b.right;
            case Kind::Call:
            case Kind::InTable:
            case Kind::Lookup: return a.name == b.name && a.args == b.args;
            case Kind::Not:
            case Kind::And: return a.kids == b.kids;
        }
        return false;
    }
    friend bool operator!=(const ICond& a, const ICond& b) { return !(a == b); }
};

struct IStmt {
    enum class Kind { ForEach, If, Return };
    Kind kind = Kind::Return;
    std::vector<std::string> loop_vars; // ForEach
    std::string table;                  // ForEach
    std::vector<IStmt> body;            // ForEach / If
    ICond cond;                         // If
    bool ret = false;                   // Return

    static IStmt foreach(std::vector<std::string> vars, std::string table,
                         std::vector<IStmt> body) {
        IStmt s;
        s.kind = Kind::ForEach;
        s.loop_vars = std::move(vars);
        s.table = std::move(table);
        s.body = std::move(body);
        return s;
    }
    static IStmt ifthen(ICond c, std::vector<IStmt> body) {
        IStmt s;
        s.kind = Kind::If;
        s.cond = std::move(c);
        s.body = std::move(body);
        return s;
    }
    static IStmt ret_stmt(bool b) {
        IStmt s;
        s.kind = Kind::Return;
        s.ret = b;
        return s;
    }
};

struct IProc {
    std::string name;
    std::vector<std::string> params;
    std::vector<IStmt> body;
};

struct ITable {
    std::string name;
    std::vector<std::vector<std::string>> rows;
    // derived column view: rows are the distinct values of column `col` of
    // table `base` (recomputed when the base table is overridden)
    std::string base;
    std::size_t col = 0;
};

// ── Search metadata (Tier 2) ────────────────────────────────────────────────

struct SearchFixed {
    Atom atom;
    bool positive = true;
    std::string proc; // check procedure deciding the atom
};

struct SearchClause {
    int head = -1;                              // candidate index
    std::vector<std::pair<int, bool>> choice;   // (candidate index, sign)
    std::vector<SearchFixed> fixed;             // choice-independent literals
    bool prunable = true; // false when a choice-dependent non-choice literal
                          // had to be deferred to the leaf check
};

struct SearchInfo {
    std::vector<Atom> candidates;           // ground choice atoms, lex order
    std::vector<std::string> support_proc;  // per candidate
    std::vector<SearchClause> clauses;
    std::size_t node_cap = std::size_t(1) << 24;
};

struct ImpProgram {
    std::vector<ITable> tables;
    std::vector<IProc> procs;
    // ground atoms decided deterministically once the choices are fixed, in
    // dependency order: (check procedure, ground atom)
    std::vector<std::pair<std::string, Atom>> model_sweep;
    std::optional<SearchInfo> search;

    const IProc* find_proc(const std::string& name) const {
        for (const auto& p : procs)
            if (p.name == name) return &p;
        return nullptr;
    }
};

// ── Synthesis ───────────────────────────────────────────────────────────────

namespace detail {

// deterministic lowercase output names for rule variables, unique per proc
class Namer {
public:
    std::string of(const std::string& var) {
        auto it = map_.find(var);
        if (it != map_.end()) return it->second;
        std::string base;
        for (char c : var) base += static_cast<char>(std::tolower(
                               static_cast<unsigned char>(c)));
        if (base.empty() ||
            !std::islower(static_cast<unsigned char>(base[0])))
            base = "v" + base;
        const std::string n = fresh(base);
        map_[var] = n;
        return n;
    }

    std::string fresh(const std::string& base) {
        std::string n = base;
        int k = 1;
        while (used_.count(n)) n = base + "_" + std::to_string(++k);
        used_.insert(n);
        return n;
    }

private:
    std::map<std::string, std::string> map_;
    std::set<std::string> used_;
};

struct SynthCtx {
    const Program* prog = nullptr;     // normalized
    const Analysis* an = nullptr;
    const CompletionProgram* cp = nullptr;
    std::set<std::string> choice_preds;
    std::vector<ITable>* tables = nullptr;
    std::map<std::pair<std::string, std::size_t>, std::string> col_tables;

    const DomainMap& domains() const { return an->domains; }

    // table holding the distinct values of one generator column
    std::string col_table(const std::string& pred, std::size_t col) {
        if (an->arity.at(pred) == 1) return pred;
        const auto key = std::make_pair(pred, col);
        auto it = col_tables.find(key);
        if (it != col_tables.end()) return it->second;
        ITable t;
        t.name = "__col" + std::to_string(col) + "_" + pred;
        t.base = pred;
        t.col = col;
        for (const auto& v : domains().column(pred, col))
            t.rows.push_back({v});
        tables->push_back(t);
        col_tables[key] = t.name;
        return t.name;
    }
};

inline IValue term_value(const Term& t, Namer& nm) {
    return t.is_var() ? IValue::var(nm.of(t.name)) : IValue::cst(t.name);
}

inline std::vector<IValue> atom_values(const Atom& a, Namer& nm) {
    std::vector<IValue> out;
    for (const auto& t : a.args) out.push_back(term_value(t, nm));
    return out;
}

// positive-direction condition for one body literal
inline ICond literal_cond(const Literal& l, Namer& nm, SynthCtx& ctx) {
    if (l.is_cmp())
        return ICond::ccmp(term_value(l.left, nm), l.op,
                           term_value(l.right, nm));
    const std::string& pred = l.atom.pred;
    ICond pos;
    if (ctx.domains().is_domain(pred))
        pos = ICond::in_table(pred, atom_values(l.atom, nm));
    else if (ctx.choice_preds.count(pred))
        pos = ICond::lookup(pred, atom_values(l.atom, nm));
    else
        pos = ICond::ccall("check_" + pred, atom_values(l.atom, nm));
    if (!l.negated()) return pos;
    // a negated non-domain, non-choice literal calls the dual directly
    if (!ctx.domains().is_domain(pred) && !ctx.choice_preds.count(pred))
        return ICond::ccall("check_not_" + pred, atom_values(l.atom, nm));
    return ICond::cnot(std::move(pos));
}

inline void collect_literal_vars(const Literal& l,
                                 std::vector<std::string>& out) {
    if (l.is_cmp()) {
        if (l.left.is_var()) out.push_back(l.left.name);
        if (l.right.is_var()) out.push_back(l.right.name);
        return;
    }
    for (const auto& t : l.atom.args)
        if (t.is_var()) out.push_back(t.name);
}

// one level of the loop/condition nest a rule body compiles to
struct Level {
    bool has_loop = false;
    std::vector<std::string> loop_vars;
    std::string table;
    std::vector<ICond> conds;
};

inline std::vector<IStmt> fold_levels(std::vector<Level> levels, bool leaf) {
    std::vector<IStmt> cur{IStmt::ret_stmt(leaf)};
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        if (!it->conds.empty())
            cur = {IStmt::ifthen(ICond::cand(std::move(it->conds)),
                                 std::move(cur))};
        if (it->has_loop)
            cur = {IStmt::foreach(std::move(it->loop_vars),
                                  std::move(it->table), std::move(cur))};
    }
    return cur;
}

// Compile one rule body in the positive direction: generator literals with
// unbound variables open loops over their tables; everything else becomes a
// condition once its variables are bound.  The innermost statement returns
// `leaf` (true for check_/supported_ blocks).
inline std::vector<IStmt> compile_positive_block(const Rule& rule,
                                                 const RuleShape& shape,
                                                 std::set<std::string> bound,
                                                 Namer& nm, SynthCtx& ctx,
                                                 bool leaf = true) {
    std::vector<Level> levels(1);
    std::vector<std::size_t> deferred;

    auto ready = [&](std::size_t i) {
        std::vector<std::string> vs;
        collect_literal_vars(rule.body[i], vs);
        for (const auto& v : vs)
            if (!bound.count(v)) return false;
        return true;
    };
    auto emit_cond = [&](std::size_t i) {
        levels.back().conds.push_back(literal_cond(rule.body[i], nm, ctx));
    };
    auto flush_deferred = [&]() {
        bool progressed = true;
        while (progressed) {
            progressed = false;
            for (auto it = deferred.begin(); it != deferred.end(); ++it) {
                if (!ready(*it)) continue;
                emit_cond(*it);
                deferred.erase(it);
                progressed = true;
                break;
            }
        }
    };

    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        const Literal& l = rule.body[i];
        const bool is_gen = shape.gen_idx.count(i) != 0;
        bool unbound = false;
        if (is_gen)
            for (const auto& t : l.atom.args)
                if (t.is_var() && !bound.count(t.name)) unbound = true;

        if (is_gen && unbound) {
            Level lvl;
            lvl.has_loop = true;
            lvl.table = l.atom.pred;
            std::set<std::string> bound_here;
            for (const auto& t : l.atom.args) {
                if (t.is_var() && !bound.count(t.name) &&
                    !bound_here.count(t.name)) {
                    lvl.loop_vars.push_back(nm.of(t.name));
                    bound_here.insert(t.name);
                } else {
                    // column constrained to an already-known value
                    const std::string aux = nm.fresh("t");
                    lvl.loop_vars.push_back(aux);
                    lvl.conds.push_back(ICond::ccmp(
                        IValue::var(aux), CmpOp::Eq, term_value(t, nm)));
                }
            }
            bound.insert(bound_here.begin(), bound_here.end());
            // pre-compute eq conds referencing vars bound in this literal
            // were already handled above; open the level
            std::vector<ICond> eqs = std::move(lvl.conds);
            lvl.conds.clear();
            levels.push_back(std::move(lvl));
            for (auto& e : eqs) levels.back().conds.push_back(std::move(e));
            flush_deferred();
            continue;
        }
        if (is_gen) {
            if (shape.assured_idx.count(i)) continue; // implied by enumeration
            emit_cond(i); // generator over bound args: membership test
            continue;
        }
        if (ready(i))
            emit_cond(i);
        else
            deferred.push_back(i);
    }
    flush_deferred();
    if (!deferred.empty())
        throw std::logic_error("synthesis: unbound literal in safe rule");
    return fold_levels(std::move(levels), leaf);
}

// Compile one rule's block of the dual procedure: return false as soon as the
// body is satisfiable, with body-only variables swept by forall loops over
// their generator columns.
inline std::vector<IStmt> compile_dual_block(const Rule& rule,
                                             const RuleShape& shape,
                                             const std::vector<std::string>&
                                                 head_vars,
                                             Namer& nm, SynthCtx& ctx) {
    // depth of a variable: 0 for head vars, k for the k-th forall loop
    std::map<std::string, std::size_t> depth;
    for (const auto& v : head_vars) depth[v] = 0;
    for (std::size_t k = 0; k < shape.body_only.size(); ++k)
        depth[shape.body_only[k]] = k + 1;

    std::vector<Level> levels(shape.body_only.size() + 1);
    for (std::size_t k = 0; k < shape.body_only.size(); ++k) {
        const std::string& v = shape.body_only[k];
        const Generator& g = shape.gmap.at(v);
        Level& lvl = levels[k + 1];
        lvl.has_loop = true;
        lvl.table = ctx.col_table(g.pred, g.arg_pos);
        lvl.loop_vars.push_back(nm.of(v));
    }
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        if (shape.gen_idx.count(i) && shape.assured_idx.count(i)) continue;
        std::vector<std::string> vs;
        collect_literal_vars(rule.body[i], vs);
        std::size_t d = 0;
        for (const auto& v : vs) d = std::max(d, depth.at(v));
        levels[d].conds.push_back(literal_cond(rule.body[i], nm, ctx));
    }
    return fold_levels(std::move(levels), false);
}

inline IProc compile_check(const DualGroup& grp, SynthCtx& ctx) {
    IProc proc;
    proc.name = "check_" + grp.pred;
    Namer nm;
    for (const auto& v : grp.head_vars) proc.params.push_back(nm.of(v));
    const std::set<std::string> bound(grp.head_vars.begin(),
                                      grp.head_vars.end());
    for (const auto& rule : grp.rules) {
        const RuleShape shape = rule_shape(rule, grp.head_vars, grp.pred,
                                           *ctx.prog, ctx.domains());
        Namer rule_nm = nm; // head vars share names; locals are per rule
        auto block =
            compile_positive_block(rule, shape, bound, rule_nm, ctx, true);
        for (auto& s : block) proc.body.push_back(std::move(s));
    }
    proc.body.push_back(IStmt::ret_stmt(false));
    return proc;
}

inline IProc compile_check_not(const DualGroup& grp, SynthCtx& ctx) {
    IProc proc;
    proc.name = "check_not_" + grp.pred;
    Namer nm;
    for (const auto& v : grp.head_vars) proc.params.push_back(nm.of(v));
    if (grp.rules.empty()) {
        // undefined predicate: unconditionally absent, guarded by the domain
        // memberships its call sites feed it from
        std::vector<ICond> guards;
        for (const auto& cl : grp.not_rule.body)
            if (cl.kind == CLiteral::Kind::Lit && cl.lit.positive())
                guards.push_back(literal_cond(cl.lit, nm, ctx));
        if (guards.empty()) {
            proc.body.push_back(IStmt::ret_stmt(true));
        } else {
            proc.body.push_back(IStmt::ifthen(ICond::cand(std::move(guards)),
                                              {IStmt::ret_stmt(true)}));
            proc.body.push_back(IStmt::ret_stmt(false));
        }
        return proc;
    }
    for (const auto& rule : grp.rules) {
        const RuleShape shape = rule_shape(rule, grp.head_vars, grp.pred,
                                           *ctx.prog, ctx.domains());
        Namer rule_nm = nm;
        auto block = compile_dual_block(rule, shape, grp.head_vars, rule_nm,
                                        ctx);
        for (auto& s : block) proc.body.push_back(std::move(s));
    }
    proc.body.push_back(IStmt::ret_stmt(true));
    return proc;
}

inline IProc compile_supported(const DualGroup& grp, SynthCtx& ctx) {
    IProc proc = compile_check(grp, ctx);
    proc.name = "supported_" + grp.pred;
    return proc;
}

inline Atom ground_atom(const Atom& a,
                        const std::map<std::string, std::string>& env) {
    Atom out;
    out.pred = a.pred;
    for (const auto& t : a.args)
        out.args.push_back(
            Term::constant(t.is_var() ? env.at(t.name) : t.name));
    return out;
}

} // namespace detail

// Build the Search metadata for a tight-choice program: ground candidates,
// ground completion clauses of the choice predicates for pruning, and the
// per-candidate supportedness procedures.
namespace detail {

inline SearchInfo build_search(const CompletionProgram& cp, const Analysis& an,
                               const std::set<std::string>& choice_preds,
                               const std::set<std::string>& tainted) {
    SearchInfo info;
    const DomainMap& d = an.domains;

    std::vector<std::string> cps(choice_preds.begin(), choice_preds.end());
    std::sort(cps.begin(), cps.end());
    std::map<std::string, int> index;
    for (const auto& pred : cps) {
        std::vector<Atom> atoms;
        for (const auto& tup : atom_universe(an, pred)) {
            Atom a;
            a.pred = pred;
            for (const auto& v : tup) a.args.push_back(Term::constant(v));
            atoms.push_back(std::move(a));
        }
        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& x, const Atom& y) {
                      return atom_key(x) < atom_key(y);
                  });
        for (auto& a : atoms) {
            index[atom_key(a)] = static_cast<int>(info.candidates.size());
            info.support_proc.push_back("supported_" + a.pred);
            info.candidates.push_back(std::move(a));
        }
    }

    for (const auto& rule : cp.original.rules) {
        if (!rule.head || !choice_preds.count(rule.head->pred)) continue;
        const GeneratorMap gmap = generator_map(rule, d);
        const std::map<std::string, Term> alias = rule_aliases(rule, gmap);
        std::vector<std::string> vars;
        std::vector<std::vector<std::string>> values;
        for (const auto& v : rule_vars(rule)) {
            if (alias.count(v)) continue; // equality-bound: derived below
            vars.push_back(v);
            values.push_back(variable_domain(gmap.at(v), d));
        }

        std::vector<std::size_t> idx(vars.size(), 0);
        while (true) {
            std::map<std::string, std::string> env;
            for (std::size_t i = 0; i < vars.size(); ++i)
                env[vars[i]] = values[i][idx[i]];
            for (const auto& [v, t] : alias)
                env[v] = t.is_var() ? env.at(t.name) : t.name;

            SearchClause clause;
            bool alive = true;
            const Atom head = ground_atom(*rule.head, env);
            auto hit = index.find(atom_key(head));
            if (hit == index.end())
                throw std::logic_error("search: head atom outside universe");
            clause.head = hit->second;
            for (const auto& l : rule.body) {
                if (l.is_cmp()) {
                    const std::string lv =
                        l.left.is_var() ? env.at(l.left.name) : l.left.name;
                    const std::string rv =
                        l.right.is_var() ? env.at(l.right.name) : l.right.name;
                    if (!eval_cmp(lv, l.op, rv)) alive = false;
                    continue;
                }
                const Atom ga = ground_atom(l.atom, env);
                const std::string& pred = ga.pred;
                if (choice_preds.count(pred)) {
                    auto it = index.find(atom_key(ga));
                    if (it == index.end())
                        throw std::logic_error(
                            "search: choice atom outside universe");
                    clause.choice.push_back({it->second, l.positive()});
                    continue;
                }
                if (d.is_domain(pred)) {
                    const auto& tuples = d.tuples.at(pred);
                    std::vector<std::string> tup;
                    for (const auto& t : ga.args) tup.push_back(t.name);
                    const bool present =
                        std::find(tuples.begin(), tuples.end(), tup) !=
                        tuples.end();
                    if (present != l.positive()) alive = false;
                    continue;
                }
                if (tainted.count(pred)) {
                    // choice-dependent literal: defer to the leaf check
                    clause.prunable = false;
                    continue;
                }
                clause.fixed.push_back({ga, l.positive(), "check_" + pred});
            }
            if (alive) info.clauses.push_back(std::move(clause));

            std::size_t k = 0;
            for (; k < vars.size(); ++k) {
                if (++idx[k] < values[k].size()) break;
                idx[k] = 0;
            }
            if (vars.empty() || k == vars.size()) break;
        }
    }
    return info;
}

} // namespace detail

// Compile without the cleanup passes; `synthesize` below adds them.
inline ImpProgram compile_program(const Program& source) {
    const Program normalized = normalize_heads(source);
    const Analysis an = analyze(normalized);
    if (an.cls.rejected()) throw SynthRejected(an.cls.reasons);
    const CompletionProgram cp = dualize(normalized, an.domains);

    ImpProgram ip;
    for (const auto& pred : an.domains.order) {
        ITable t;
        t.name = pred;
        t.rows = an.domains.tuples.at(pred);
        ip.tables.push_back(std::move(t));
    }

    detail::SynthCtx ctx;
    ctx.prog = &normalized;
    ctx.an = &an;
    ctx.cp = &cp;
    ctx.tables = &ip.tables;
    for (int scc : an.cls.choice_sccs)
        for (const auto& pred : an.graph.sccs[scc].preds)
            ctx.choice_preds.insert(pred);

    // predicates transitively depending on a choice predicate
    std::set<std::string> tainted = ctx.choice_preds;
    std::map<std::string, std::vector<std::string>> rdeps; // callee -> callers
    for (const auto& e : an.graph.edges) rdeps[e.to].push_back(e.from);
    std::vector<std::string> work(tainted.begin(), tainted.end());
    while (!work.empty()) {
        const std::string p = work.back();
        work.pop_back();
        for (const auto& caller : rdeps[p])
            if (tainted.insert(caller).second) work.push_back(caller);
    }

    std::map<std::string, const DualGroup*> group_of;
    for (const auto& g : cp.groups) group_of[g.pred] = &g;

    // callees first, so every Call refers to an earlier procedure
    std::vector<std::string> order = an.graph.topo;
    for (const auto& g : cp.groups)
        if (std::find(order.begin(), order.end(), g.pred) == order.end())
            order.push_back(g.pred);
    for (const auto& pred : order) {
        if (an.domains.is_domain(pred)) continue;
        auto it = group_of.find(pred);
        if (it == group_of.end()) continue;
        const DualGroup& grp = *it->second;
        if (ctx.choice_preds.count(pred)) {
            ip.procs.push_back(detail::compile_supported(grp, ctx));
        } else {
            ip.procs.push_back(detail::compile_check(grp, ctx));
            ip.procs.push_back(detail::compile_check_not(grp, ctx));
        }
    }

    for (const auto& pred : order) {
        if (an.domains.is_domain(pred) || ctx.choice_preds.count(pred))
            continue;
        if (!group_of.count(pred)) continue;
        for (const auto& tup : atom_universe(an, pred)) {
            Atom a;
            a.pred = pred;
            for (const auto& v : tup) a.args.push_back(Term::constant(v));
            ip.model_sweep.push_back({"check_" + pred, std::move(a)});
        }
    }

    if (!ctx.choice_preds.empty())
        ip.search = detail::build_search(cp, an, ctx.choice_preds, tainted);
    return ip;
}

// ── Simplifier ──────────────────────────────────────────────────────────────

namespace detail {

inline ICond simplify_cond(ICond c, const ImpProgram& ip, bool& changed) {
    for (auto& k : c.kids) k = simplify_cond(std::move(k), ip, changed);
    switch (c.kind) {
        case ICond::Kind::Cmp:
            if (!c.left.is_var && !c.right.is_var) {
                changed = true;
                return ICond::cconst(
                    eval_cmp(c.left.text, c.op, c.right.text));
            }
            return c;
        case ICond::Kind::Call: {
            // a procedure that immediately returns a constant folds away
            const IProc* p = ip.find_proc(c.name);
            if (p && p->body.size() == 1 &&
                p->body[0].kind == IStmt::Kind::Return) {
                changed = true;
                return ICond::cconst(p->body[0].ret);
            }
            return c;
        }
        case ICond::Kind::Not:
            if (c.kids[0].kind == ICond::Kind::Const) {
                changed = true;
                return ICond::cconst(!c.kids[0].bval);
            }
            if (c.kids[0].kind == ICond::Kind::Not) {
                changed = true;
                return std::move(c.kids[0].kids[0]);
            }
            return c;
        case ICond::Kind::And: {
            std::vector<ICond> ks;
            for (auto& k : c.kids) {
                if (k.kind == ICond::Kind::Const) {
                    changed = true;
                    if (!k.bval) return ICond::cconst(false);
                    continue; // drop a true conjunct
                }
                if (k.kind == ICond::Kind::And) {
                    changed = true;
                    for (auto& kk : k.kids) ks.push_back(std::move(kk));
                    continue;
                }
                ks.push_back(std::move(k));
            }
            if (ks.size() != c.kids.size()) changed = true;
            return ICond::cand(std::move(ks));
        }
        default: return c;
    }
}

inline void simplify_stmts(std::vector<IStmt>& stmts, const ImpProgram& ip,
                           bool& changed) {
    std::vector<IStmt> out;
    for (auto& s : stmts) {
        if (s.kind == IStmt::Kind::If) {
            s.cond = simplify_cond(std::move(s.cond), ip, changed);
            simplify_stmts(s.body, ip, changed);
            if (s.cond.kind == ICond::Kind::Const) {
                changed = true;
                if (s.cond.bval)
                    for (auto& b : s.body) out.push_back(std::move(b));
                continue; // false guard: drop the block
            }
            if (s.body.empty()) {
                changed = true;
                continue;
            }
        } else if (s.kind == IStmt::Kind::ForEach) {
            simplify_stmts(s.body, ip, changed);
            if (s.body.empty()) {
                changed = true;
                continue;
            }
        }
        const bool is_return = s.kind == IStmt::Kind::Return;
        out.push_back(std::move(s));
        if (is_return) break; // anything after a return is dead
    }
    if (out.size() != stmts.size()) changed = true;
    stmts = std::move(out);
}

inline void collect_names(const std::vector<IStmt>& stmts,
                          std::set<std::string>& names) {
    for (const auto& s : stmts) {
        for (const auto& v : s.loop_vars) names.insert(v);
        collect_names(s.body, names);
    }
}

inline void rename_vars(ICond& c, const std::map<std::string, std::string>& m);
inline void rename_vars(std::vector<IStmt>& stmts,
                        const std::map<std::string, std::string>& m) {
    for (auto& s : stmts) {
        for (auto& v : s.loop_vars) {
            auto it = m.find(v);
            if (it != m.end()) v = it->second;
        }
        if (s.kind == IStmt::Kind::If) rename_vars(s.cond, m);
        rename_vars(s.body, m);
    }
}
inline void rename_vars(ICond& c, const std::map<std::string, std::string>& m) {
    auto fix = [&](IValue& v) {
        if (!v.is_var) return;
        auto it = m.find(v.text);
        if (it != m.end()) v.text = it->second;
    };
    fix(c.left);
    fix(c.right);
    for (auto& a : c.args) fix(a);
    for (auto& k : c.kids) rename_vars(k, m);
}

inline void subst_params(ICond& c, const std::map<std::string, IValue>& m);
inline void subst_params(std::vector<IStmt>& stmts,
                         const std::map<std::string, IValue>& m) {
    for (auto& s : stmts) {
        if (s.kind == IStmt::Kind::If) subst_params(s.cond, m);
        subst_params(s.body, m);
    }
}
inline void subst_params(ICond& c, const std::map<std::string, IValue>& m) {
    auto fix = [&](IValue& v) {
        if (!v.is_var) return;
        auto it = m.find(v.text);
        if (it != m.end()) v = it->second;
    };
    fix(c.left);
    fix(c.right);
    for (auto& a : c.args) fix(a);
    for (auto& k : c.kids) subst_params(k, m);
}

// A procedure of the shape { if other(args): return true; return false }
// is an alias: splice the callee's body in, renaming locals as needed.
inline bool inline_alias(IProc& proc, const ImpProgram& ip) {
    if (proc.body.size() != 2) return false;
    const IStmt& guard = proc.body[0];
    const IStmt& tail = proc.body[1];
    if (guard.kind != IStmt::Kind::If ||
        guard.cond.kind != ICond::Kind::Call)
        return false;
    if (guard.body.size() != 1 ||
        guard.body[0].kind != IStmt::Kind::Return || !guard.body[0].ret)
        return false;
    if (tail.kind != IStmt::Kind::Return || tail.ret) return false;
    const IProc* callee = ip.find_proc(guard.cond.name);
    if (!callee || callee->name == proc.name) return false;
    if (callee->params.size() != guard.cond.args.size()) return false;

    std::vector<IStmt> body = callee->body;

    // freshen callee locals that collide with incoming argument variables
    std::set<std::string> incoming;
    for (const auto& a : guard.cond.args)
        if (a.is_var) incoming.insert(a.text);
    std::set<std::string> locals;
    collect_names(body, locals);
    std::map<std::string, std::string> renames;
    for (const auto& n : locals) {
        if (!incoming.count(n)) continue;
        std::string fresh = n;
        int k = 1;
        while (locals.count(fresh) || incoming.count(fresh))
            fresh = n + "_" + std::to_string(++k);
        renames[n] = fresh;
        locals.insert(fresh);
    }
    if (!renames.empty()) rename_vars(body, renames);

    std::map<std::string, IValue> m;
    for (std::size_t i = 0; i < callee->params.size(); ++i)
        m[callee->params[i]] = guard.cond.args[i];
    subst_params(body, m);
    proc.body = std::move(body);
    return true;
}

// Hoist a membership test shared by every rule block of a positive procedure
// to a single early-exit guard at the top.
inline bool hoist_membership(IProc& proc) {
    if (proc.body.size() < 3) return false; // needs >=2 blocks + return
    const IStmt& tail = proc.body.back();
    if (tail.kind != IStmt::Kind::Return || tail.ret) return false;
    std::vector<IStmt*> blocks;
    for (std::size_t i = 0; i + 1 < proc.body.size(); ++i) {
        IStmt& s = proc.body[i];
        if (s.kind != IStmt::Kind::If || s.body.size() != 1 ||
            s.body[0].kind != IStmt::Kind::Return || !s.body[0].ret)
            return false;
        blocks.push_back(&s);
    }
    if (blocks.size() < 2) return false;

    auto conjuncts = [](ICond& c) -> std::vector<ICond*> {
        if (c.kind == ICond::Kind::And) {
            std::vector<ICond*> out;
            for (auto& k : c.kids) out.push_back(&k);
            return out;
        }
        return {&c};
    };
    // candidate guards: membership tests in the first block
    for (ICond* cand : conjuncts(blocks[0]->cond)) {
        if (cand->kind != ICond::Kind::InTable) continue;
        const ICond guard = *cand;
        bool everywhere = true;
        for (IStmt* b : blocks) {
            bool found = false;
            for (ICond* c : conjuncts(b->cond))
                if (*c == guard) found = true;
            if (!found) {
                everywhere = false;
                break;
            }
        }
        if (!everywhere) continue;
        for (IStmt* b : blocks) {
            std::vector<ICond> keep;
            for (ICond* c : conjuncts(b->cond))
                if (*c != guard) keep.push_back(*c);
            b->cond = ICond::cand(std::move(keep));
        }
        std::vector<IStmt> body;
        body.push_back(IStmt::ifthen(ICond::cnot(guard),
                                     {IStmt::ret_stmt(false)}));
        for (auto& s : proc.body) body.push_back(std::move(s));
        proc.body = std::move(body);
        return true;
    }
    return false;
}

} // namespace detail

inline void simplify(ImpProgram& ip) {
    for (int round = 0; round < 16; ++round) {
        bool changed = false;
        for (auto& p : ip.procs) {
            detail::simplify_stmts(p.body, ip, changed);
            if (detail::inline_alias(p, ip)) changed = true;
            if (detail::hoist_membership(p)) changed = true;
        }
        if (!changed) break;
    }
}

inline ImpProgram synthesize(const Program& source) {
    ImpProgram ip = compile_program(source);
    simplify(ip);
    return ip;
}

// ── Interpreter ─────────────────────────────────────────────────────────────

class Machine {
public:
    explicit Machine(const ImpProgram& ip,
                     const DomainMap* fact_override = nullptr)
        : ip_(ip) {
        for (const auto& t : ip.tables) tables_[t.name] = t.rows;
        if (fact_override) {
            for (const auto& pred : fact_override->order)
                tables_[pred] = fact_override->tuples.at(pred);
            for (const auto& t : ip.tables) {
                if (t.base.empty()) continue;
                // derived column view: recompute from the overridden base
                std::vector<std::vector<std::string>> rows;
                std::set<std::string> seen;
                for (const auto& row : tables_.at(t.base)) {
                    if (t.col >= row.size()) continue;
                    if (seen.insert(row[t.col]).second)
                        rows.push_back({row[t.col]});
                }
                tables_[t.name] = std::move(rows);
            }
        }
    }

    const std::map<std::string, bool>* decided = nullptr;

    bool call(const std::string& proc,
              const std::vector<std::string>& args) {
        const IProc* p = ip_.find_proc(proc);
        if (!p) throw std::logic_error("no such procedure: " + proc);
        if (p->params.size() != args.size())
            throw std::logic_error("arity mismatch calling " + proc);
        if (++depth_ > 10000) {
            --depth_;
            throw std::logic_error("call depth exceeded in " + proc);
        }
        std::map<std::string, std::string> env;
        for (std::size_t i = 0; i < args.size(); ++i)
            env[p->params[i]] = args[i];
        bool result = false;
        if (!exec(p->body, env, result))
            throw std::logic_error("procedure fell off the end: " + proc);
        --depth_;
        return result;
    }

private:
    std::string resolve(const IValue& v,
                        const std::map<std::string, std::string>& env) const {
        if (!v.is_var) return v.text;
        auto it = env.find(v.text);
        if (it == env.end())
            throw std::logic_error("unbound variable: " + v.text);
        return it->second;
    }

    bool eval(const ICond& c, std::map<std::string, std::string>& env) {
        switch (c.kind) {
            case ICond::Kind::Const: return c.bval;
            case ICond::Kind::Cmp:
                return eval_cmp(resolve(c.left, env), c.op,
                                resolve(c.right, env));
            case ICond::Kind::Call: {
                std::vector<std::string> args;
                for (const auto& a : c.args) args.push_back(resolve(a, env));
                return call(c.name, args);
            }
            case ICond::Kind::InTable: {
                auto it = tables_.find(c.name);
                if (it == tables_.end()) return false;
                std::vector<std::string> tup;
                for (const auto& a : c.args) tup.push_back(resolve(a, env));
                return std::find(it->second.begin(), it->second.end(), tup) !=
                       it->second.end();
            }
            case ICond::Kind::Lookup: {
                if (!decided) return false;
                Atom a;
                a.pred = c.name;
                for (const auto& v : c.args)
                    a.args.push_back(Term::constant(resolve(v, env)));
                auto it = decided->find(atom_key(a));
                return it != decided->end() && it->second;
            }
            case ICond::Kind::Not: return !eval(c.kids[0], env);
            case ICond::Kind::And:
                for (const auto& k : c.kids)
                    if (!eval(k, env)) return false;
                return true;
        }
        return false;
    }

    // returns true when a Return was executed (result in `result`)
    bool exec(const std::vector<IStmt>& stmts,
              std::map<std::string, std::string>& env, bool& result) {
        for (const auto& s : stmts) {
            switch (s.kind) {
                case IStmt::Kind::Return:
                    result = s.ret;
                    return true;
                case IStmt::Kind::If:
                    if (eval(s.cond, env))
                        if (exec(s.body, env, result)) return true;
                    break;
                case IStmt::Kind::ForEach: {
                    auto it = tables_.find(s.table);
                    if (it == tables_.end()) break;
                    for (const auto& row : it->second) {
                        if (row.size() != s.loop_vars.size())
                            throw std::logic_error(
                                "row arity mismatch in table " + s.table);
                        for (std::size_t i = 0; i < row.size(); ++i)
                            env[s.loop_vars[i]] = row[i];
                        if (exec(s.body, env, result)) return true;
                    }
                    break;
                }
            }
        }
        return false;
    }

    const ImpProgram& ip_;
    std::map<std::string, std::vector<std::vector<std::string>>> tables_;
    int depth_ = 0;
};

inline bool run_proc(const ImpProgram& ip, const std::string& proc,
                     const std::vector<std::string>& args,
                     const DomainMap* facts = nullptr) {
    Machine m(ip, facts);
    return m.call(proc, args);
}

// ── Model enumeration ───────────────────────────────────────────────────────

namespace detail {

inline std::vector<std::string> atom_args(const Atom& a) {
    std::vector<std::string> out;
    for (const auto& t : a.args) out.push_back(t.name);
    return out;
}

} // namespace detail

// All models as sets of ground atom keys (domain facts excluded).  Tier 1
// yields exactly one model; Tier 2 runs the backtracking search.
inline std::vector<std::set<std::string>> enumerate_models(
    const ImpProgram& ip, const DomainMap* facts = nullptr,
    std::size_t node_cap = 0) {
    Machine m(ip, facts);

    auto sweep = [&]() {
        std::set<std::string> model;
        for (const auto& [proc, atom] : ip.model_sweep)
            if (m.call(proc, detail::atom_args(atom)))
                model.insert(atom_key(atom));
        return model;
    };

    if (!ip.search) return {sweep()};

    const SearchInfo& info = *ip.search;
    const std::size_t cap = node_cap ? node_cap : info.node_cap;
    const std::size_t n = info.candidates.size();

    // choice-independent literals are decided once, up front
    std::vector<bool> clause_fixed_ok(info.clauses.size(), true);
    for (std::size_t i = 0; i < info.clauses.size(); ++i)
        for (const auto& f : info.clauses[i].fixed)
            if (m.call(f.proc, detail::atom_args(f.atom)) != f.positive)
                clause_fixed_ok[i] = false;

    std::vector<int> assign(n, -1); // -1 undecided, 0 false, 1 true
    std::map<std::string, bool> decided;
    std::vector<std::set<std::string>> models;
    std::size_t nodes = 0;

    enum class TV { False, True, Unknown };
    auto clause_tv = [&](std::size_t i) {
        const SearchClause& c = info.clauses[i];
        if (!clause_fixed_ok[i]) return TV::False;
        bool unknown = false;
        for (const auto& [cand, sign] : c.choice) {
            if (assign[cand] == -1) {
                unknown = true;
                continue;
            }
            if ((assign[cand] == 1) != sign) return TV::False;
        }
        if (unknown || !c.prunable) return TV::Unknown;
        return TV::True;
    };
    auto consistent = [&]() {
        for (std::size_t i = 0; i < info.clauses.size(); ++i) {
            const int h = info.clauses[i].head;
            if (assign[h] == 0 && clause_tv(i) == TV::True)
                return false; // a decidedly true body with a false head
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (assign[c] != 1) continue;
            bool possible = false;
            for (std::size_t i = 0; i < info.clauses.size(); ++i)
                if (info.clauses[i].head == static_cast<int>(c) &&
                    clause_tv(i) != TV::False)
                    possible = true;
            if (!possible) return false; // a true atom with no live support
        }
        return true;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t k) {
        if (k == n) {
            m.decided = &decided;
            bool ok = true;
            for (std::size_t c = 0; c < n && ok; ++c) {
                const bool sup = m.call(
                    info.support_proc[c],
                    detail::atom_args(info.candidates[c]));
                if (sup != (assign[c] == 1)) ok = false;
            }
            if (ok) {
                std::set<std::string> model = sweep();
                for (std::size_t c = 0; c < n; ++c)
                    if (assign[c] == 1)
                        model.insert(atom_key(info.candidates[c]));
                models.push_back(std::move(model));
            }
            m.decided = nullptr;
            return;
        }
        for (int v : {1, 0}) {
            if (++nodes > cap)
                throw SearchCapExceeded("search node budget exhausted");
            assign[k] = v;
            decided[atom_key(info.candidates[k])] = v == 1;
            if (consistent()) dfs(k + 1);
            assign[k] = -1;
            decided.erase(atom_key(info.candidates[k]));
        }
    };
    dfs(0);
    return models;
}

// ── Emission ────────────────────────────────────────────────────────────────

enum class EmitStyle { Plain, Paper };

namespace detail {

inline const char* imp_cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

inline std::string emit_proc_name(const std::string& name, EmitStyle style) {
    if (style == EmitStyle::Paper && name.rfind("check_", 0) == 0)
        return name.substr(6);
    return name;
}

inline std::string emit_tuple(const std::vector<IValue>& args) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].text;
    }
    return out;
}

inline std::string emit_cond(const ICond& c, EmitStyle style) {
    const char* btrue = style == EmitStyle::Paper ? "True" : "true";
    const char* bfalse = style == EmitStyle::Paper ? "False" : "false";
    switch (c.kind) {
        case ICond::Kind::Const: return c.bval ? btrue : bfalse;
        case ICond::Kind::Cmp:
            return c.left.text + " " + imp_cmp_text(c.op) + " " +
                   c.right.text;
        case ICond::Kind::Call:
            return emit_proc_name(c.name, style) + "(" + emit_tuple(c.args) +
                   ")";
        case ICond::Kind::InTable:
            if (c.args.size() == 1)
                return c.args[0].text + " in " + c.name;
            return "(" + emit_tuple(c.args) + ") in " + c.name;
        case ICond::Kind::Lookup: {
            std::string inner = c.name;
            if (!c.args.empty()) inner += "(" + emit_tuple(c.args) + ")";
            return "holds(" + inner + ")";
        }
        case ICond::Kind::Not: {
            const ICond& k = c.kids[0];
            const std::string s = emit_cond(k, style);
            if (k.kind == ICond::Kind::Call ||
                k.kind == ICond::Kind::Lookup ||
                k.kind == ICond::Kind::Const)
                return "not " + s;
            return "not (" + s + ")";
        }
        case ICond::Kind::And: {
            std::string out;
            for (std::size_t i = 0; i < c.kids.size(); ++i) {
                if (i) out += " and ";
                const std::string s = emit_cond(c.kids[i], style);
                out += c.kids[i].kind == ICond::Kind::And ? "(" + s + ")" : s;
            }
            return out;
        }
    }
    return "";
}

inline void emit_stmts(const std::vector<IStmt>& stmts, EmitStyle style,
                       int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    const char* btrue = style == EmitStyle::Paper ? "True" : "true";
    const char* bfalse = style == EmitStyle::Paper ? "False" : "false";
    for (const auto& s : stmts) {
        switch (s.kind) {
            case IStmt::Kind::Return:
                out += pad + "return " + (s.ret ? btrue : bfalse) + "\n";
                break;
            case IStmt::Kind::If:
                out += pad + "if " + emit_cond(s.cond, style) + ":\n";
                emit_stmts(s.body, style, indent + 1, out);
                break;
            case IStmt::Kind::ForEach: {
                std::string vars;
                for (std::size_t i = 0; i < s.loop_vars.size(); ++i) {
                    if (i) vars += ", ";
                    vars += s.loop_vars[i];
                }
                out += pad + "for " + vars + " in " + s.table + ":\n";
                emit_stmts(s.body, style, indent + 1, out);
                break;
            }
        }
    }
}

} // namespace detail

inline std::string emit_text(const ImpProgram& ip,
                             EmitStyle style = EmitStyle::Plain) {
    std::string out;
    for (const auto& t : ip.tables) {
        out += "table " + t.name + ": [";
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            if (i) out += ", ";
            const auto& row = t.rows[i];
            if (row.size() == 1) {
                out += row[0];
            } else {
                out += "(";
                for (std::size_t j = 0; j < row.size(); ++j) {
                    if (j) out += ", ";
                    out += row[j];
                }
                out += ")";
            }
        }
        out += "]\n";
    }
    for (const auto& p : ip.procs) {
        out += "\n";
        const char* kw = style == EmitStyle::Paper ? "def " : "proc ";
        out += kw + detail::emit_proc_name(p.name, style) + "(";
        for (std::size_t i = 0; i < p.params.size(); ++i) {
            if (i) out += ", ";
            out += p.params[i];
        }
        out += "):\n";
        detail::emit_stmts(p.body, style, 1, out);
    }
    if (ip.search) {
        out += "\nsearch:\n";
        for (const auto& a : ip.search->candidates)
            out += "    choose " + render(a) + "\n";
        out += "    emit_model\n";
    }
    return out;
}

} // namespace aspc

#endif // ASPC_SYNTH_HPP
