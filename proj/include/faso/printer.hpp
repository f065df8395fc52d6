#pragma once

#include <string>

#include "faso/ast.hpp"

namespace faso {

// Canonical text form.  parse_program(print_program(p)) is structurally
// identical to p; annotations are always printed, including the default 1.

inline std::string print_annotated_literal(const AnnotatedLiteral& l) {
    std::string out;
    if (l.naf) out += "not ";
    out += literal_to_string(l.lit);
    out += ':';
    out += term_to_string(l.annotation);
    return out;
}

inline std::string print_condition(const std::vector<AnnotatedLiteral>& condition) {
    std::string out;
    for (size_t i = 0; i < condition.size(); ++i) {
        if (i) out += ", ";
        out += print_annotated_literal(condition[i]);
    }
    return out;
}

inline std::string print_set_term(const FuzzySetTerm& set) {
    std::string out;
    if (const auto* sym = std::get_if<SymbolicSet>(&set)) {
        out += term_to_string(sym->value);
        out += ':';
        out += term_to_string(sym->annotation);
        out += " | ";
        out += print_condition(sym->condition);
        return out;
    }
    const auto& entries = std::get<GroundSet>(set);
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += '<';
        out += term_to_string(entries[i].value);
        out += ':';
        out += term_to_string(entries[i].grade);
        if (!entries[i].condition.empty()) {
            out += " | ";
            out += print_condition(entries[i].condition);
        }
        out += '>';
    }
    return out;
}

inline std::string print_aggregate(const FuzzyAggregate& agg) {
    std::string out;
    if (agg.func == AggFunc::ImplicitSingleton) {
        out += print_set_term(agg.set);
        return out;
    }
    out += agg_func_text(agg.func);
    out += '{';
    out += print_set_term(agg.set);
    out += '}';
    return out;
}

inline std::string print_aggregate_atom(const AggregateAtom& atom) {
    std::string out;
    if (atom.naf) out += "not ";
    out += print_aggregate(atom.aggregate);
    out += ' ';
    out += rel_text(atom.relation);
    out += ' ';
    out += term_to_string(atom.guard);
    out += " : ";
    out += term_to_string(atom.annotation);
    return out;
}

inline std::string print_opt_aggregate(const OptAggregate& opt) {
    std::string out;
    out += opt_kind_text(opt.kind);
    out += '{';
    out += print_aggregate(opt.aggregate);
    out += '}';
    return out;
}

namespace print_detail {

inline int combination_precedence(Combination::Kind k) {
    switch (k) {
    case Combination::Kind::Or: return 1;
    case Combination::Kind::And: return 2;
    default: return 3;
    }
}

inline void print_combination_rec(std::string& out, const Combination& c, int parent_prec) {
    int prec = combination_precedence(c.kind);
    switch (c.kind) {
    case Combination::Kind::Literal: out += print_annotated_literal(c.lit); return;
    case Combination::Kind::Aggregate: out += print_aggregate_atom(c.agg); return;
    case Combination::Kind::Opt: out += print_opt_aggregate(c.opt); return;
    case Combination::Kind::And:
    case Combination::Kind::Or: {
        bool parens = prec < parent_prec;
        if (parens) out += '(';
        print_combination_rec(out, c.children[0], prec);
        out += c.kind == Combination::Kind::And ? " && " : " || ";
        // the right operand gets parentheses at equal precedence so the
        // reparse rebuilds the same (left-associated) tree
        print_combination_rec(out, c.children[1], prec + 1);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace print_detail

inline std::string print_combination(const Combination& c) {
    std::string out;
    print_detail::print_combination_rec(out, c, 0);
    return out;
}

inline std::string print_pref_body_item(const PrefBodyItem& item) {
    if (const auto* lit = std::get_if<AnnotatedLiteral>(&item))
        return print_annotated_literal(*lit);
    return print_aggregate_atom(std::get<AggregateAtom>(item));
}

inline std::string print_rule(const FuzzyPreferenceRule& rule) {
    std::string out = "#pref ";
    for (size_t i = 0; i < rule.head.size(); ++i) {
        if (i) out += " >> ";
        out += print_combination(rule.head[i]);
    }
    if (!rule.body.empty()) {
        out += " :- ";
        for (size_t i = 0; i < rule.body.size(); ++i) {
            if (i) out += ", ";
            out += print_pref_body_item(rule.body[i]);
        }
    }
    out += '.';
    return out;
}

inline std::string print_rule(const GeneratorRule& rule) {
    std::string out;
    for (size_t i = 0; i < rule.head.size(); ++i) {
        if (i) out += " v ";
        out += print_annotated_literal(rule.head[i]);
    }
    if (!rule.body.empty() || !rule.guards.empty()) {
        if (!rule.head.empty()) out += ' ';
        out += ":- ";
        size_t n = 0;
        for (const auto& l : rule.body) {
            if (n++) out += ", ";
            out += print_annotated_literal(l);
        }
        for (const auto& g : rule.guards) {
            if (n++) out += ", ";
            out += term_to_string(g.lhs);
            out += ' ';
            out += rel_text(g.relation);
            out += ' ';
            out += term_to_string(g.rhs);
        }
    }
    out += '.';
    return out;
}

inline std::string print_program(const Program& p) {
    std::string out;
    for (const auto& rule : p.gen) {
        out += print_rule(rule);
        out += '\n';
    }
    for (const auto& rule : p.pref) {
        out += print_rule(rule);
        out += '\n';
    }
    return out;
}

} // namespace faso
