#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "faso/diagnostics.hpp"
#include "faso/term.hpp"

namespace faso {

// A literal is an atom or its classical negation.  Double classical
// negation is not representable.
struct Literal {
    bool negated = false; // classical negation '-'
    std::string predicate;
    std::vector<Term> args;
};

inline bool operator==(const Literal& a, const Literal& b) {
    return a.negated == b.negated && a.predicate == b.predicate && a.args == b.args;
}
inline bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }

inline int literal_compare(const Literal& a, const Literal& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate ? -1 : 1;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (int c = term_compare(a.args[i], b.args[i]); c != 0) return c;
    if (a.negated != b.negated) return a.negated ? 1 : -1;
    return 0;
}

struct LiteralLess {
    bool operator()(const Literal& a, const Literal& b) const {
        return literal_compare(a, b) < 0;
    }
};

inline Literal complement(const Literal& l) {
    Literal out = l;
    out.negated = !out.negated;
    return out;
}

inline std::string literal_to_string(const Literal& l) {
    std::string out;
    if (l.negated) out += '-';
    out += l.predicate;
    if (!l.args.empty()) {
        out += '(';
        for (size_t i = 0; i < l.args.size(); ++i) {
            if (i) out += ',';
            out += term_to_string(l.args[i]);
        }
        out += ')';
    }
    return out;
}

// l:mu, optionally under negation as failure.  The annotation is a Term
// restricted to numbers, variables, and {+,-,*,/,min,max} expressions;
// an omitted source annotation is the constant 1.
struct AnnotatedLiteral {
    Literal lit;
    Term annotation = Term::make_number(1.0);
    bool naf = false;
};

inline bool operator==(const AnnotatedLiteral& a, const AnnotatedLiteral& b) {
    return a.naf == b.naf && a.lit == b.lit && a.annotation == b.annotation;
}
inline bool operator!=(const AnnotatedLiteral& a, const AnnotatedLiteral& b) { return !(a == b); }

// Symbolic fuzzy set { X : U | C }.
struct SymbolicSet {
    Term value;      // X: variable or function term
    Term annotation; // U: annotation variable or annotation function
    std::vector<AnnotatedLiteral> condition; // conjunction, positive literals
};

inline bool operator==(const SymbolicSet& a, const SymbolicSet& b) {
    return a.value == b.value && a.annotation == b.annotation && a.condition == b.condition;
}

// One ground pair <x : u | C^g>.  The grade part is normally a numeric
// constant; hand-built sets may carry annotation variables that bind to
// the grades an answer set assigns the condition literals.
struct SetEntry {
    Term value;
    Term grade;
    std::vector<AnnotatedLiteral> condition;
};

inline bool operator==(const SetEntry& a, const SetEntry& b) {
    return a.value == b.value && a.grade == b.grade && a.condition == b.condition;
}
inline bool operator!=(const SetEntry& a, const SetEntry& b) { return !(a == b); }

inline int set_entry_compare(const SetEntry& a, const SetEntry& b) {
    if (int c = term_compare(a.value, b.value); c != 0) return c;
    if (int c = term_compare(a.grade, b.grade); c != 0) return c;
    if (a.condition.size() != b.condition.size())
        return a.condition.size() < b.condition.size() ? -1 : 1;
    for (size_t i = 0; i < a.condition.size(); ++i) {
        if (int c = literal_compare(a.condition[i].lit, b.condition[i].lit); c != 0) return c;
        if (int c = term_compare(a.condition[i].annotation, b.condition[i].annotation); c != 0)
            return c;
    }
    return 0;
}

using GroundSet = std::vector<SetEntry>;

// A fuzzy set term is either symbolic or a finite set of ground entries.
using FuzzySetTerm = std::variant<SymbolicSet, GroundSet>;

inline bool is_ground_set(const FuzzySetTerm& s) {
    return std::holds_alternative<GroundSet>(s);
}

// Aggregate functions.  ImplicitSingleton realizes the shorthand
// where a set term appears with no explicit function: any non-count
// aggregate applied to a singleton returns the element itself,
// so the value is defined exactly when the evaluated multiset is a
// singleton.
enum class AggFunc { Sum, Times, Min, Max, Count, ImplicitSingleton };

inline const char* agg_func_text(AggFunc f) {
    switch (f) {
    case AggFunc::Sum: return "#sum_f";
    case AggFunc::Times: return "#times_f";
    case AggFunc::Min: return "#min_f";
    case AggFunc::Max: return "#max_f";
    case AggFunc::Count: return "#count_f";
    case AggFunc::ImplicitSingleton: return "";
    }
    return "";
}

struct FuzzyAggregate {
    AggFunc func = AggFunc::Sum;
    FuzzySetTerm set = GroundSet{};
};

inline bool operator==(const FuzzyAggregate& a, const FuzzyAggregate& b) {
    return a.func == b.func && a.set == b.set;
}

// f(S) rel T : mu, optionally under negation as failure.
struct AggregateAtom {
    FuzzyAggregate aggregate;
    Rel relation = Rel::Eq;
    Term guard;
    Term annotation = Term::make_number(1.0);
    bool naf = false;
};

inline bool operator==(const AggregateAtom& a, const AggregateAtom& b) {
    return a.naf == b.naf && a.relation == b.relation && a.aggregate == b.aggregate &&
           a.guard == b.guard && a.annotation == b.annotation;
}

enum class OptKind { MaxGrade, MinGrade, MaxValue, MinValue, MaxValueGrade, MinValueGrade };

inline const char* opt_kind_text(OptKind k) {
    switch (k) {
    case OptKind::MaxGrade: return "#max_u";
    case OptKind::MinGrade: return "#min_u";
    case OptKind::MaxValue: return "#max_x";
    case OptKind::MinValue: return "#min_x";
    case OptKind::MaxValueGrade: return "#max_xu";
    case OptKind::MinValueGrade: return "#min_xu";
    }
    return "";
}

// Fuzzy optimization aggregate: a universe-relative optimality assertion.
// Never under negation as failure.
struct OptAggregate {
    OptKind kind = OptKind::MaxGrade;
    FuzzyAggregate aggregate;
};

inline bool operator==(const OptAggregate& a, const OptAggregate& b) {
    return a.kind == b.kind && a.aggregate == b.aggregate;
}

// AND/OR tree over annotated literals, aggregate atoms, and optimization
// aggregates.  Connectives are binary; negation as failure lives on the
// literal and aggregate-atom leaves only.
struct Combination {
    enum class Kind { Literal, Aggregate, Opt, And, Or };

    Kind kind = Kind::Literal;
    AnnotatedLiteral lit;           // Kind::Literal
    AggregateAtom agg;              // Kind::Aggregate
    OptAggregate opt;               // Kind::Opt
    std::vector<Combination> children; // Kind::And / Kind::Or, exactly 2

    static Combination make_literal(AnnotatedLiteral l) {
        Combination c;
        c.kind = Kind::Literal;
        c.lit = std::move(l);
        return c;
    }
    static Combination make_aggregate(AggregateAtom a) {
        Combination c;
        c.kind = Kind::Aggregate;
        c.agg = std::move(a);
        return c;
    }
    static Combination make_opt(OptAggregate o) {
        Combination c;
        c.kind = Kind::Opt;
        c.opt = std::move(o);
        return c;
    }
    static Combination make_connective(Kind k, Combination lhs, Combination rhs) {
        Combination c;
        c.kind = k;
        c.children.push_back(std::move(lhs));
        c.children.push_back(std::move(rhs));
        return c;
    }
};

inline bool operator==(const Combination& a, const Combination& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Combination::Kind::Literal: return a.lit == b.lit;
    case Combination::Kind::Aggregate: return a.agg == b.agg;
    case Combination::Kind::Opt: return a.opt == b.opt;
    case Combination::Kind::And:
    case Combination::Kind::Or:
        return a.children == b.children;
    }
    return false;
}
inline bool operator!=(const Combination& a, const Combination& b) { return !(a == b); }

// Body items of a fuzzy preference rule: annotated literals and aggregate
// atoms, positive or under negation as failure.
using PrefBodyItem = std::variant<AnnotatedLiteral, AggregateAtom>;

inline bool pref_body_item_equal(const PrefBodyItem& a, const PrefBodyItem& b) {
    return a == b;
}

// C_1 >> C_2 >> ... >> C_k :- body.  Head order is the rank order.
struct FuzzyPreferenceRule {
    std::vector<Combination> head; // k >= 1
    std::vector<PrefBodyItem> body;
    SourceSpan span;
};

inline bool operator==(const FuzzyPreferenceRule& a, const FuzzyPreferenceRule& b) {
    return a.head == b.head && a.body == b.body; // spans are not structural
}

// Term-level comparison guard in a generator rule body.
struct Guard {
    Term lhs;
    Rel relation = Rel::Le;
    Term rhs;
};

inline bool operator==(const Guard& a, const Guard& b) {
    return a.relation == b.relation && a.lhs == b.lhs && a.rhs == b.rhs;
}

// Generator rule: disjunctive head (empty = constraint), body of annotated
// literals (positive and naf) plus arithmetic comparison guards.
struct GeneratorRule {
    std::vector<AnnotatedLiteral> head; // disjuncts; empty marks a constraint
    std::vector<AnnotatedLiteral> body;
    std::vector<Guard> guards;
    SourceSpan span;

    bool is_constraint() const { return head.empty(); }
    bool is_fact() const { return !head.empty() && body.empty() && guards.empty(); }
    bool is_disjunctive_fact() const { return is_fact() && head.size() >= 2; }
};

inline bool operator==(const GeneratorRule& a, const GeneratorRule& b) {
    return a.head == b.head && a.body == b.body && a.guards == b.guards;
}

// Pi = R_gen (generator rules) with R_pref (fuzzy preference rules).
struct Program {
    std::vector<GeneratorRule> gen;
    std::vector<FuzzyPreferenceRule> pref;
};

inline bool operator==(const Program& a, const Program& b) {
    return a.gen == b.gen && a.pref == b.pref;
}
inline bool operator!=(const Program& a, const Program& b) { return !(a == b); }

} // namespace faso
