// ============================================================================
// aspc/ast.hpp — abstract syntax for the datalog-with-negation input language
// ============================================================================
//
// Terms are variables (leading uppercase) or constants (lowercase identifiers
// and integers).  No function symbols anywhere: args of an atom are terms
// only.  A rule may lack a head (constraint) or have an empty body (fact),
// never both.
//
// Constants carry a total order: integers numerically, integers before
// symbolic constants, symbolic constants lexicographically.
//
// ============================================================================

#ifndef ASPC_AST_HPP
#define ASPC_AST_HPP

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace aspc {

// ── Term ────────────────────────────────────────────────────────────────────

struct Term {
    enum class Kind { Var, Const };
    Kind kind = Kind::Const;
    std::string name;

    bool is_var() const { return kind == Kind::Var; }

    static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

inline bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// Total order on ground constant text: integers numerically and before all
// symbolic constants; symbolic constants by lexicographic comparison.
inline int compare_const(const std::string& a, const std::string& b) {
    const bool ia = is_integer_text(a), ib = is_integer_text(b);
    if (ia && ib) {
        const long long va = std::stoll(a), vb = std::stoll(b);
        return va < vb ? -1 : va > vb ? 1 : 0;
    }
    if (ia != ib) return ia ? -1 : 1;
    return a < b ? -1 : a > b ? 1 : 0;
}

// ── Atom ────────────────────────────────────────────────────────────────────

struct Atom {
    std::string pred;
    std::vector<Term> args;

    bool ground() const {
        for (const auto& t : args)
            if (t.is_var()) return false;
        return true;
    }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.pred == b.pred && a.args == b.args;
    }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
};

// ── Literal ─────────────────────────────────────────────────────────────────

enum class CmpOp { Lt, Gt, Le, Ge, Eq, Ne };

inline const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Le: return "=<";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

// Complement of a comparison operator: < ↦ >=, > ↦ =<, =< ↦ >, >= ↦ <,
// = ↦ !=, != ↦ =.
inline CmpOp cmp_complement(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return CmpOp::Ge;
        case CmpOp::Gt: return CmpOp::Le;
        case CmpOp::Le: return CmpOp::Gt;
        case CmpOp::Ge: return CmpOp::Lt;
        case CmpOp::Eq: return CmpOp::Ne;
        case CmpOp::Ne: return CmpOp::Eq;
    }
    return op;
}

inline bool eval_cmp(const std::string& l, CmpOp op, const std::string& r) {
    const int c = compare_const(l, r);
    switch (op) {
        case CmpOp::Lt: return c < 0;
        case CmpOp::Gt: return c > 0;
        case CmpOp::Le: return c <= 0;
        case CmpOp::Ge: return c >= 0;
        case CmpOp::Eq: return c == 0;
        case CmpOp::Ne: return c != 0;
    }
    return false;
}

struct Literal {
    enum class Kind { Pos, Neg, Cmp };
    Kind kind = Kind::Pos;
    Atom atom;            // Pos / Neg
    Term left, right;     // Cmp
    CmpOp op = CmpOp::Lt; // Cmp

    static Literal pos(Atom a) {
        Literal l;
        l.kind = Kind::Pos;
        l.atom = std::move(a);
        return l;
    }
    static Literal neg(Atom a) {
        Literal l;
        l.kind = Kind::Neg;
        l.atom = std::move(a);
        return l;
    }
    static Literal cmp(Term l_, CmpOp op_, Term r_) {
        Literal l;
        l.kind = Kind::Cmp;
        l.left = std::move(l_);
        l.op = op_;
        l.right = std::move(r_);
        return l;
    }

    bool is_cmp() const { return kind == Kind::Cmp; }
    bool positive() const { return kind == Kind::Pos; }
    bool negated() const { return kind == Kind::Neg; }

    friend bool operator==(const Literal& a, const Literal& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::Cmp)
            return a.left == b.left && a.op == b.op && a.right == b.right;
        return a.atom == b.atom;
    }
    friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
};

// ── Rule / Program ──────────────────────────────────────────────────────────

struct Rule {
    std::optional<Atom> head; // absent = head-less constraint
    std::vector<Literal> body;
    int line = 0; // source line, for diagnostics

    bool is_fact() const { return head.has_value() && body.empty(); }
    bool is_constraint() const { return !head.has_value(); }

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head == b.head && a.body == b.body;
    }
    friend bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }
};

struct Program {
    std::vector<Rule> rules;

    friend bool operator==(const Program& a, const Program& b) {
        return a.rules == b.rules;
    }
    friend bool operator!=(const Program& a, const Program& b) { return !(a == b); }
};

// ── Rendering ───────────────────────────────────────────────────────────────
// Canonical text: one rule per line, single space after commas, ":-"
// separator, terminating period.  Equal ASTs render byte-identically.

inline std::string render(const Term& t) { return t.name; }

inline std::string render(const Atom& a) {
    if (a.args.empty()) return a.pred;
    std::string out = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += a.args[i].name;
    }
    out += ")";
    return out;
}

inline std::string render(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Pos: return render(l.atom);
        case Literal::Kind::Neg: return "not " + render(l.atom);
        case Literal::Kind::Cmp:
            return l.left.name + " " + cmp_text(l.op) + " " + l.right.name;
    }
    return "";
}

inline std::string render(const Rule& r) {
    std::string out;
    if (r.head) out += render(*r.head);
    if (!r.body.empty() || !r.head) {
        if (r.head) out += " ";
        out += ":- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += render(r.body[i]);
        }
    }
    out += ".";
    return out;
}

inline std::string render(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        out += render(r);
        out += "\n";
    }
    return out;
}

// Ground atom key, e.g. "edge(a,b)".  Used for interning and set membership.
inline std::string atom_key(const Atom& a) {
    if (a.args.empty()) return a.pred;
    std::string out = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ",";
        out += a.args[i].name;
    }
    out += ")";
    return out;
}

} // namespace aspc

#endif // ASPC_AST_HPP
