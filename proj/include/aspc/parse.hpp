// ============================================================================
// aspc/parse.hpp — recursive-descent parser for the input language
// ============================================================================
//
//   program    := { statement }
//   statement  := rule | comment
//   rule       := [ atom ] ":-" body "." | atom "."
//   body       := literal { "," literal }
//   literal    := "not" atom | atom | term relop term
//   relop      := "<" | ">" | "=<" | ">=" | "=" | "!="
//   atom       := ident [ "(" term { "," term } ")" ]
//   term       := VARIABLE | ident | integer
//   comment    := "%" … end-of-line
//
// Nested parentheses inside arguments are rejected (no function symbols).
// Identifiers with the reserved "__" prefix are rejected: that namespace
// belongs to generated dual/helper predicates.
//
// ============================================================================

#ifndef ASPC_PARSE_HPP
#define ASPC_PARSE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "aspc/ast.hpp"

namespace aspc {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

namespace detail {

struct Token {
    enum class Kind { Ident, Variable, Integer, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        const char c = src_[pos_];
        if (std::islower(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Kind::Ident;
            tok_.text = take_word();
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            // "_" alone would be an anonymous variable, which is unsupported;
            // the parser reports it with a dedicated message.
            tok_.kind = Token::Kind::Variable;
            tok_.text = take_word();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            tok_.kind = Token::Kind::Integer;
            tok_.text.clear();
            if (c == '-') {
                tok_.text += take();
            }
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_])))
                tok_.text += take();
            return;
        }
        tok_.kind = Token::Kind::Punct;
        tok_.text.clear();
        // multi-char punctuation: ":-" "=<" ">=" "!="
        if (c == ':' && lookahead('-')) {
            tok_.text = ":-";
            take();
            take();
            return;
        }
        if (c == '=' && lookahead('<')) {
            tok_.text = "=<";
            take();
            take();
            return;
        }
        if (c == '>' && lookahead('=')) {
            tok_.text = ">=";
            take();
            take();
            return;
        }
        if (c == '!' && lookahead('=')) {
            tok_.text = "!=";
            take();
            take();
            return;
        }
        tok_.text = std::string(1, take());
    }

    bool lookahead(char c) const {
        return pos_ + 1 < src_.size() && src_[pos_ + 1] == c;
    }

    char take() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    std::string take_word() {
        std::string w;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                w += take();
            else
                break;
        }
        return w;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Program program() {
        Program p;
        while (lex_.peek().kind != Token::Kind::End) p.rules.push_back(rule());
        return p;
    }

    Literal query() {
        Literal l = literal();
        if (l.is_cmp())
            fail(lex_.peek(), "comparison is not a valid query");
        expect_end();
        return l;
    }

private:
    using Token = detail::Token;

    Rule rule() {
        Rule r;
        r.line = lex_.peek().line;
        if (!is_punct(":-")) {
            r.head = atom();
            if (is_punct(".")) {
                lex_.next();
                return r;
            }
        }
        expect_punct(":-", "':-' or '.'");
        if (!is_punct(".")) {
            r.body.push_back(literal());
            while (is_punct(",")) {
                lex_.next();
                r.body.push_back(literal());
            }
        }
        expect_punct(".", "'.'");
        if (!r.head && r.body.empty())
            fail(lex_.peek(), "a rule needs a head, a body, or both");
        return r;
    }

    Literal literal() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Ident && t.text == "not") {
            Token kw = lex_.next();
            if (lex_.peek().kind == Token::Kind::Ident)
                return Literal::neg(atom());
            fail(kw, "expected atom after 'not'");
        }
        if (t.kind == Token::Kind::Ident) {
            // could be an atom or the left side of a comparison on a constant
            Token id = lex_.next();
            if (is_punct("(")) return Literal::pos(finish_atom(id));
            if (relop_ahead())
                return finish_cmp(Term::constant(id.text));
            Atom a;
            a.pred = check_pred(id);
            return Literal::pos(a);
        }
        if (t.kind == Token::Kind::Variable || t.kind == Token::Kind::Integer)
            return finish_cmp(term());
        fail(t, "expected literal");
    }

    Literal finish_cmp(Term left) {
        const Token op = lex_.next();
        CmpOp o;
        if (op.text == "<")
            o = CmpOp::Lt;
        else if (op.text == ">")
            o = CmpOp::Gt;
        else if (op.text == "=<")
            o = CmpOp::Le;
        else if (op.text == ">=")
            o = CmpOp::Ge;
        else if (op.text == "=")
            o = CmpOp::Eq;
        else if (op.text == "!=")
            o = CmpOp::Ne;
        else
            fail(op, "expected comparison operator");
        return Literal::cmp(std::move(left), o, term());
    }

    Atom atom() {
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::Ident) fail(t, "expected predicate name");
        Token id = lex_.next();
        if (is_punct("(")) return finish_atom(id);
        Atom a;
        a.pred = check_pred(id);
        return a;
    }

    Atom finish_atom(const Token& id) {
        Atom a;
        a.pred = check_pred(id);
        expect_punct("(", "'('");
        a.args.push_back(arg_term());
        while (is_punct(",")) {
            lex_.next();
            a.args.push_back(arg_term());
        }
        expect_punct(")", "')'");
        return a;
    }

    Term arg_term() {
        Term t = term();
        if (is_punct("("))
            fail(lex_.peek(),
                 "datalog violation: function symbols are not allowed");
        return t;
    }

    Term term() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Variable) {
            Token v = lex_.next();
            if (v.text == "_")
                fail(v, "anonymous variables are not supported");
            return Term::var(v.text);
        }
        if (t.kind == Token::Kind::Ident) {
            Token c = lex_.next();
            return Term::constant(c.text);
        }
        if (t.kind == Token::Kind::Integer) {
            Token c = lex_.next();
            return Term::constant(c.text);
        }
        fail(t, "expected term");
    }

    std::string check_pred(const Token& id) {
        if (id.text.rfind("__", 0) == 0)
            fail(id, "identifiers starting with '__' are reserved");
        return id.text;
    }

    bool relop_ahead() const {
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::Punct) return false;
        return t.text == "<" || t.text == ">" || t.text == "=<" ||
               t.text == ">=" || t.text == "=" || t.text == "!=";
    }

    bool is_punct(const char* s) const {
        const Token& t = lex_.peek();
        return t.kind == Token::Kind::Punct && t.text == s;
    }

    void expect_punct(const char* s, const char* what) {
        if (!is_punct(s)) fail(lex_.peek(), std::string("expected ") + what);
        lex_.next();
    }

    void expect_end() {
        if (lex_.peek().kind != Token::Kind::End)
            fail(lex_.peek(), "trailing input after query literal");
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        std::string got = t.kind == Token::Kind::End
                              ? "end of input"
                              : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + " (got " + got + ")");
    }

    Lexer lex_;
};

} // namespace detail

inline Program parse_program(const std::string& text) {
    return detail::Parser(text).program();
}

inline Literal parse_query(const std::string& text) {
    return detail::Parser(text).query();
}

inline std::string render_program(const Program& p) { return render(p); }

} // namespace aspc

#endif // ASPC_PARSE_HPP
