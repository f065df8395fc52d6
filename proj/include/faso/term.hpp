#pragma once

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "faso/grade.hpp"

namespace faso {

enum class TermKind { Number, Symbol, Variable, Function, Arith };

// Arithmetic connectives shared by term expressions and fuzzy annotations.
// Min/Max are only admitted in annotation position; the parser never
// produces them at term level (there `min(..)` is an uninterpreted
// function term).
enum class ArithOp { Add, Sub, Mul, Div, Min, Max };

// One node type covers Herbrand terms and annotation expressions: a term
// is a numeric or symbolic constant, a variable, an uninterpreted function
// term, or an arithmetic expression over subterms.
struct Term {
    TermKind kind = TermKind::Symbol;
    double number = 0.0;       // Number
    std::string name;          // Symbol / Variable / Function
    ArithOp op = ArithOp::Add; // Arith
    std::vector<Term> args;    // Function arguments / Arith operands (2)

    static Term make_number(double v) {
        Term t;
        t.kind = TermKind::Number;
        t.number = v;
        return t;
    }
    static Term make_symbol(std::string n) {
        Term t;
        t.kind = TermKind::Symbol;
        t.name = std::move(n);
        return t;
    }
    static Term make_variable(std::string n) {
        Term t;
        t.kind = TermKind::Variable;
        t.name = std::move(n);
        return t;
    }
    static Term make_function(std::string n, std::vector<Term> a) {
        Term t;
        t.kind = TermKind::Function;
        t.name = std::move(n);
        t.args = std::move(a);
        return t;
    }
    static Term make_arith(ArithOp o, Term lhs, Term rhs) {
        Term t;
        t.kind = TermKind::Arith;
        t.op = o;
        t.args.push_back(std::move(lhs));
        t.args.push_back(std::move(rhs));
        return t;
    }

    bool is_number() const { return kind == TermKind::Number; }
    bool is_variable() const { return kind == TermKind::Variable; }

    bool is_ground() const {
        if (kind == TermKind::Variable) return false;
        for (const auto& a : args)
            if (!a.is_ground()) return false;
        return true;
    }

    void collect_variables(std::set<std::string>& out) const {
        if (kind == TermKind::Variable) out.insert(name);
        for (const auto& a : args) a.collect_variables(out);
    }
};

inline bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case TermKind::Number: return a.number == b.number;
    case TermKind::Symbol:
    case TermKind::Variable:
        return a.name == b.name;
    case TermKind::Function:
        if (a.name != b.name) return false;
        break;
    case TermKind::Arith:
        if (a.op != b.op) return false;
        break;
    }
    return a.args == b.args;
}
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

// Total order used for canonical output: numbers by value, then symbols,
// variables, functions, arithmetic.
inline int term_compare(const Term& a, const Term& b) {
    auto rank = [](TermKind k) {
        switch (k) {
        case TermKind::Number: return 0;
        case TermKind::Symbol: return 1;
        case TermKind::Variable: return 2;
        case TermKind::Function: return 3;
        case TermKind::Arith: return 4;
        }
        return 5;
    };
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind) ? -1 : 1;
    switch (a.kind) {
    case TermKind::Number:
        if (a.number != b.number) return a.number < b.number ? -1 : 1;
        return 0;
    case TermKind::Symbol:
    case TermKind::Variable:
        if (a.name != b.name) return a.name < b.name ? -1 : 1;
        return 0;
    case TermKind::Function:
        if (a.name != b.name) return a.name < b.name ? -1 : 1;
        break;
    case TermKind::Arith:
        if (a.op != b.op) return static_cast<int>(a.op) < static_cast<int>(b.op) ? -1 : 1;
        break;
    }
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (int c = term_compare(a.args[i], b.args[i]); c != 0) return c;
    return 0;
}

inline bool term_less(const Term& a, const Term& b) { return term_compare(a, b) < 0; }

// Shortest decimal representation that parses back to the same double.
inline std::string number_to_string(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

inline std::string term_to_string(const Term& t);

namespace detail {

inline int arith_precedence(ArithOp op) {
    switch (op) {
    case ArithOp::Add:
    case ArithOp::Sub: return 1;
    case ArithOp::Mul:
    case ArithOp::Div: return 2;
    case ArithOp::Min:
    case ArithOp::Max: return 3; // printed as calls; never needs parens
    }
    return 0;
}

inline void print_term(std::string& out, const Term& t, int parent_prec, bool right_operand) {
    switch (t.kind) {
    case TermKind::Number:
        out += number_to_string(t.number);
        return;
    case TermKind::Symbol:
    case TermKind::Variable:
        out += t.name;
        return;
    case TermKind::Function: {
        out += t.name;
        out += '(';
        for (size_t i = 0; i < t.args.size(); ++i) {
            if (i) out += ',';
            print_term(out, t.args[i], 0, false);
        }
        out += ')';
        return;
    }
    case TermKind::Arith: {
        if (t.op == ArithOp::Min || t.op == ArithOp::Max) {
            out += (t.op == ArithOp::Min) ? "min(" : "max(";
            print_term(out, t.args[0], 0, false);
            out += ',';
            print_term(out, t.args[1], 0, false);
            out += ')';
            return;
        }
        int prec = arith_precedence(t.op);
        bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
        if (parens) out += '(';
        print_term(out, t.args[0], prec, false);
        switch (t.op) {
        case ArithOp::Add: out += " + "; break;
        case ArithOp::Sub: out += " - "; break;
        case ArithOp::Mul: out += " * "; break;
        case ArithOp::Div: out += " / "; break;
        default: break;
        }
        print_term(out, t.args[1], prec, true);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace detail

inline std::string term_to_string(const Term& t) {
    std::string out;
    detail::print_term(out, t, 0, false);
    return out;
}

// Substitution of variables by ground terms.
using Substitution = std::map<std::string, Term>;

inline Term substitute(const Term& t, const Substitution& theta) {
    if (t.kind == TermKind::Variable) {
        auto it = theta.find(t.name);
        if (it != theta.end()) return it->second;
        return t;
    }
    Term out = t;
    for (auto& a : out.args) a = substitute(a, theta);
    return out;
}

// Numeric value of a ground expression; nullopt when the expression
// contains symbols, variables, or does not evaluate to a finite number.
inline std::optional<double> evaluate_numeric(const Term& t) {
    switch (t.kind) {
    case TermKind::Number: return t.number;
    case TermKind::Symbol:
    case TermKind::Variable:
    case TermKind::Function:
        return std::nullopt;
    case TermKind::Arith: {
        auto lhs = evaluate_numeric(t.args[0]);
        auto rhs = evaluate_numeric(t.args[1]);
        if (!lhs || !rhs) return std::nullopt;
        double r = 0.0;
        switch (t.op) {
        case ArithOp::Add: r = *lhs + *rhs; break;
        case ArithOp::Sub: r = *lhs - *rhs; break;
        case ArithOp::Mul: r = *lhs * *rhs; break;
        case ArithOp::Div: r = *lhs / *rhs; break;
        case ArithOp::Min: r = std::min(*lhs, *rhs); break;
        case ArithOp::Max: r = std::max(*lhs, *rhs); break;
        }
        if (!std::isfinite(r)) return std::nullopt;
        return r;
    }
    }
    return std::nullopt;
}

// Folds every ground arithmetic subexpression into a numeric constant.
// Subexpressions over non-numeric operands are left intact; the caller
// decides whether that makes the host object unusable.
inline Term fold_arithmetic(const Term& t) {
    if (t.kind == TermKind::Arith) {
        if (auto v = evaluate_numeric(t)) return Term::make_number(*v);
        Term out = t;
        for (auto& a : out.args) a = fold_arithmetic(a);
        return out;
    }
    if (t.kind == TermKind::Function) {
        Term out = t;
        for (auto& a : out.args) a = fold_arithmetic(a);
        return out;
    }
    return t;
}

// True when no arithmetic expression remains anywhere in the term.
inline bool is_arith_free(const Term& t) {
    if (t.kind == TermKind::Arith) return false;
    for (const auto& a : t.args)
        if (!is_arith_free(a)) return false;
    return true;
}

} // namespace faso
