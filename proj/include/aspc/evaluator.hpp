// ============================================================================
// aspc/evaluator.hpp — goal-directed query evaluation over the completion
// ============================================================================
//
// Ground goals only; query variables are expanded over argument domains by
// query().  The CHS holds the literals assumed along the current derivation:
//
//   positive goal  — fails on a purely positive loop (same negation depth),
//                    succeeds coinductively when re-reached through negation
//   negated goal   — succeeds immediately when already assumed, fails when
//                    its atom is assumed, otherwise proves the dual
//
// CHS additions made while proving one forall combination persist: the forall
// builds one consistent partial model, not independent sub-proofs.
//
// ============================================================================

#ifndef ASPC_EVALUATOR_HPP
#define ASPC_EVALUATOR_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"
#include "aspc/completion.hpp"

namespace aspc {

namespace detail {

inline Literal subst_ground(const Literal& l,
                            const std::map<std::string, std::string>& sub) {
    auto g = [&](const Term& t) {
        if (!t.is_var()) return t;
        return Term::constant(sub.at(t.name));
    };
    if (l.is_cmp()) return Literal::cmp(g(l.left), l.op, g(l.right));
    Atom a;
    a.pred = l.atom.pred;
    for (const auto& t : l.atom.args) a.args.push_back(g(t));
    return l.positive() ? Literal::pos(a) : Literal::neg(a);
}

} // namespace detail

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(std::size_t cap)
        : std::runtime_error("budget exceeded: derivation depth cap " +
                             std::to_string(cap)) {}
};

struct PartialModel {
    std::vector<std::string> pos, neg;           // sorted atom keys
    std::vector<std::string> pos_pred, neg_pred; // parallel predicate names

    bool consistent() const {
        for (const auto& a : pos)
            if (std::find(neg.begin(), neg.end(), a) != neg.end()) return false;
        return true;
    }
};

inline std::string render(const PartialModel& m, const DomainMap& d,
                          bool include_domain_facts = false) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < m.pos.size(); ++i)
        if (include_domain_facts || !d.is_domain(m.pos_pred[i]))
            parts.push_back(m.pos[i]);
    for (std::size_t i = 0; i < m.neg.size(); ++i)
        if (include_domain_facts || !d.is_domain(m.neg_pred[i]))
            parts.push_back("not " + m.neg[i]);
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    out += "}";
    return out;
}

struct TraceLine {
    int depth = 0;
    std::string goal;
    std::string outcome;
};

struct QueryAnswer {
    std::map<std::string, std::string> substitution; // var -> value
    PartialModel model;
};

class Evaluator {
public:
    Evaluator(const CompletionProgram& cp, const Analysis& a,
              std::size_t depth_cap = 0)
        : cp_(cp), a_(a) {
        depth_cap_ = depth_cap ? depth_cap
                               : std::max<std::size_t>(16, 4 * herbrand_size(a));
    }

    // solve one ground literal from an empty context
    std::optional<PartialModel> solve_goal(const Literal& goal) {
        reset();
        if (goal.is_cmp())
            return eval_cmp(goal.left.name, goal.op, goal.right.name)
                       ? std::optional<PartialModel>(PartialModel{})
                       : std::nullopt;
        if (!goal.atom.ground())
            throw std::runtime_error("solve_goal requires a ground literal");
        if (solve_lit(goal, 0, 0)) return snapshot();
        return std::nullopt;
    }

    // enumerate domain substitutions for the query's variables
    std::vector<QueryAnswer> query(const Literal& q) {
        if (q.is_cmp())
            throw std::runtime_error("comparison is not a valid query");
        std::vector<std::string> vars;
        detail::vars_of(q.atom.args, vars);
        std::vector<std::vector<std::string>> doms;
        if (!vars.empty()) {
            auto it = a_.arg_domains.find(q.atom.pred);
            if (it == a_.arg_domains.end() ||
                it->second.size() != q.atom.args.size())
                throw std::runtime_error("unsafe query variable " + vars[0] +
                                         ": no domain known for predicate " +
                                         q.atom.pred);
            doms.resize(vars.size());
            for (std::size_t j = 0; j < q.atom.args.size(); ++j) {
                const Term& t = q.atom.args[j];
                if (!t.is_var()) continue;
                const std::size_t vi =
                    std::find(vars.begin(), vars.end(), t.name) - vars.begin();
                if (doms[vi].empty()) doms[vi] = it->second[j];
            }
            for (std::size_t vi = 0; vi < vars.size(); ++vi)
                if (doms[vi].empty())
                    throw std::runtime_error("unsafe query variable " +
                                             vars[vi]);
        }
        std::vector<QueryAnswer> answers;
        std::map<std::string, std::string> sub;
        enumerate(vars, doms, sub, 0, [&](const auto& s) {
            Literal inst = detail::subst_ground(q, s);
            if (auto m = solve_goal(inst)) {
                QueryAnswer ans;
                ans.substitution = s;
                ans.model = std::move(*m);
                answers.push_back(std::move(ans));
            }
        });
        return answers;
    }

    const std::vector<TraceLine>& trace() const { return trace_; }

private:
    struct PosEntry {
        int neg_depth = 0;
        bool proven = false;
    };

    void reset() {
        pos_.clear();
        neg_.clear();
        trail_.clear();
        trace_.clear();
    }

    std::size_t mark() const { return trail_.size(); }

    void rollback(std::size_t m) {
        while (trail_.size() > m) {
            const auto& [key, positive] = trail_.back();
            if (positive)
                pos_.erase(key);
            else
                neg_.erase(key);
            trail_.pop_back();
        }
    }

    PartialModel snapshot() const {
        PartialModel m;
        std::vector<std::pair<std::string, std::string>> ps, ns;
        for (const auto& [k, e] : pos_) ps.push_back({k, pred_of_.at(k)});
        for (const auto& k : neg_) ns.push_back({k, pred_of_.at(k)});
        std::sort(ps.begin(), ps.end());
        std::sort(ns.begin(), ns.end());
        for (auto& [k, p] : ps) {
            m.pos.push_back(k);
            m.pos_pred.push_back(p);
        }
        for (auto& [k, p] : ns) {
            m.neg.push_back(k);
            m.neg_pred.push_back(p);
        }
        return m;
    }

    int trace_enter(int depth, const std::string& goal) {
        trace_.push_back({depth, goal, "?"});
        return static_cast<int>(trace_.size()) - 1;
    }
    void trace_exit(int idx, bool ok) {
        trace_[idx].outcome = ok ? "success" : "failure";
    }

    bool solve_lit(const Literal& l, int depth, int neg_depth) {
        if (static_cast<std::size_t>(depth) > depth_cap_)
            throw BudgetExceeded(depth_cap_);
        if (l.is_cmp())
            return eval_cmp(l.left.name, l.op, l.right.name);
        if (l.atom.pred.rfind("__", 0) == 0)
            return solve_generated(l.atom, depth, neg_depth);
        return l.positive() ? solve_pos(l.atom, depth, neg_depth)
                            : solve_neg(l.atom, depth, neg_depth);
    }

    bool fact_holds(const Atom& a) const {
        const auto& tuples = a_.domains.tuples.at(a.pred);
        std::vector<std::string> want;
        for (const auto& t : a.args) want.push_back(t.name);
        return std::find(tuples.begin(), tuples.end(), want) != tuples.end();
    }

    void insert(const std::string& key, const std::string& pred, bool positive,
                int neg_depth) {
        if (positive)
            pos_[key] = {neg_depth, false};
        else
            neg_.insert(key);
        pred_of_[key] = pred;
        trail_.push_back({key, positive});
    }

    bool solve_pos(const Atom& goal, int depth, int neg_depth) {
        const std::string key = atom_key(goal);
        const int tr = trace_enter(depth, key);
        if (a_.domains.is_domain(goal.pred)) {
            const bool ok = fact_holds(goal);
            if (ok && !pos_.count(key)) {
                insert(key, goal.pred, true, neg_depth);
                pos_[key].proven = true;
            }
            trace_exit(tr, ok);
            return ok;
        }
        if (neg_.count(key)) {
            trace_exit(tr, false);
            return false;
        }
        if (auto it = pos_.find(key); it != pos_.end()) {
            // proven: committed fact of this partial model.  proving: succeed
            // coinductively only if a negation was crossed since assumption.
            const bool ok = it->second.proven || neg_depth > it->second.neg_depth;
            trace_exit(tr, ok);
            return ok;
        }
        const std::size_t m = mark();
        insert(key, goal.pred, true, neg_depth);
        for (const auto& r : cp_.original.rules) {
            if (!r.head || r.head->pred != goal.pred) continue;
            if (try_rule(r, goal, depth, neg_depth)) {
                pos_[key].proven = true;
                trace_exit(tr, true);
                return true;
            }
        }
        rollback(m);
        trace_exit(tr, false);
        return false;
    }

    // one source rule, head already matching the ground goal
    bool try_rule(const Rule& r, const Atom& goal, int depth, int neg_depth) {
        std::map<std::string, std::string> sub;
        if (r.is_fact()) {
            for (std::size_t j = 0; j < goal.args.size(); ++j)
                if (r.head->args[j].name != goal.args[j].name) return false;
            return true;
        }
        for (std::size_t j = 0; j < goal.args.size(); ++j) {
            const Term& t = r.head->args[j];
            if (t.is_var()) {
                sub[t.name] = goal.args[j].name;
            } else if (t.name != goal.args[j].name) {
                return false;
            }
        }
        // body-only variables range over their generator columns
        std::vector<std::string> extra;
        for (const auto& v : detail::rule_vars(r))
            if (!sub.count(v)) extra.push_back(v);
        const GeneratorMap gm = generator_map(r, a_.domains);
        std::vector<std::vector<std::string>> doms;
        for (const auto& v : extra) {
            auto it = gm.find(v);
            if (it == gm.end()) return false; // unsafe; analysis catches this
            doms.push_back(variable_domain(it->second, a_.domains));
        }
        bool ok = false;
        enumerate(extra, doms, sub, 0, [&](const auto& s) {
            if (ok) return;
            const std::size_t m = mark();
            bool all = true;
            for (const auto& l : r.body) {
                if (!solve_lit(detail::subst_ground(l, s), depth + 1,
                               neg_depth)) {
                    all = false;
                    break;
                }
            }
            if (all)
                ok = true;
            else
                rollback(m);
        });
        return ok;
    }

    bool solve_neg(const Atom& goal, int depth, int neg_depth) {
        const std::string key = atom_key(goal);
        const int tr = trace_enter(depth, "not " + key);
        if (a_.domains.is_domain(goal.pred)) {
            const bool ok = !fact_holds(goal);
            if (ok && !neg_.count(key)) insert(key, goal.pred, false, neg_depth);
            trace_exit(tr, ok);
            return ok;
        }
        if (neg_.count(key)) {
            trace_exit(tr, true);
            return true;
        }
        if (pos_.count(key)) {
            trace_exit(tr, false);
            return false;
        }
        const std::size_t m = mark();
        insert(key, goal.pred, false, neg_depth);
        Atom dual;
        dual.pred = dual_name(goal.pred);
        dual.args = goal.args;
        if (solve_generated(dual, depth + 1, neg_depth + 1)) {
            trace_exit(tr, true);
            return true;
        }
        rollback(m);
        trace_exit(tr, false);
        return false;
    }

    bool solve_generated(const Atom& goal, int depth, int neg_depth) {
        if (static_cast<std::size_t>(depth) > depth_cap_)
            throw BudgetExceeded(depth_cap_);
        const std::vector<CRule>* clauses = cp_.clauses_for(goal.pred);
        if (!clauses) return false;
        for (const auto& c : *clauses) {
            std::map<std::string, std::string> sub;
            bool match = true;
            for (std::size_t j = 0; j < goal.args.size(); ++j) {
                const Term& t = c.head.args[j];
                if (t.is_var())
                    sub[t.name] = goal.args[j].name;
                else if (t.name != goal.args[j].name)
                    match = false;
            }
            if (!match) continue;
            const std::size_t m = mark();
            bool all = true;
            for (const auto& cl : c.body) {
                if (cl.kind == CLiteral::Kind::Lit) {
                    if (!solve_lit(detail::subst_ground(cl.lit, sub), depth + 1,
                                   neg_depth)) {
                        all = false;
                        break;
                    }
                } else {
                    if (!expand_forall(cl, sub, depth, neg_depth)) {
                        all = false;
                        break;
                    }
                }
            }
            if (all) return true;
            rollback(m);
        }
        return false;
    }

    // iterate bound variables over their domain columns, nesting
    // left-to-right; the inner goal must hold for every combination
    bool expand_forall(const CLiteral& f,
                       const std::map<std::string, std::string>& outer,
                       int depth, int neg_depth) {
        const int tr = trace_enter(depth, "forall " + render(f.inner));
        std::vector<std::string> vars;
        std::vector<std::vector<std::string>> doms;
        for (const auto& b : f.bound) {
            vars.push_back(b.var);
            doms.push_back(a_.domains.column(b.domain_pred, b.column));
        }
        std::map<std::string, std::string> sub = outer;
        bool ok = true;
        enumerate(vars, doms, sub, 0, [&](const auto& s) {
            if (!ok) return;
            Atom inst;
            inst.pred = f.inner.pred;
            for (const auto& t : f.inner.args) {
                inst.args.push_back(t.is_var() ? Term::constant(s.at(t.name))
                                               : t);
            }
            if (!solve_generated(inst, depth + 1, neg_depth)) ok = false;
        });
        trace_exit(tr, ok);
        return ok;
    }

    template <typename Fn>
    static void enumerate(const std::vector<std::string>& vars,
                          const std::vector<std::vector<std::string>>& doms,
                          std::map<std::string, std::string>& sub,
                          std::size_t i, const Fn& fn) {
        if (i == vars.size()) {
            fn(sub);
            return;
        }
        for (const auto& v : doms[i]) {
            sub[vars[i]] = v;
            enumerate(vars, doms, sub, i + 1, fn);
        }
        sub.erase(vars[i]);
    }

    const CompletionProgram& cp_;
    const Analysis& a_;
    std::size_t depth_cap_;
    std::map<std::string, PosEntry> pos_;
    std::set<std::string> neg_;
    std::map<std::string, std::string> pred_of_;
    std::vector<std::pair<std::string, bool>> trail_;
    std::vector<TraceLine> trace_;
};

} // namespace aspc

#endif // ASPC_EVALUATOR_HPP
