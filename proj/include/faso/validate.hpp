#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "faso/ast.hpp"
#include "faso/diagnostics.hpp"

namespace faso {

// ---- variable traversal -------------------------------------------------

inline void collect_term_vars(const Term& t, std::set<std::string>& out) {
    t.collect_variables(out);
}

inline void collect_literal_vars(const Literal& l, std::set<std::string>& out) {
    for (const auto& a : l.args) collect_term_vars(a, out);
}

// A positive body literal binds its argument variables at term level and,
// when its annotation is a bare variable, that variable at grade level.
struct BoundVars {
    std::set<std::string> term;
    std::set<std::string> grade;

    bool binds(const std::string& v) const { return term.count(v) || grade.count(v); }
};

inline void bind_from_literal(const AnnotatedLiteral& l, BoundVars& out) {
    if (l.naf) return;
    collect_literal_vars(l.lit, out.term);
    if (l.annotation.is_variable()) out.grade.insert(l.annotation.name);
}

inline void collect_set_vars(const FuzzySetTerm& set, std::set<std::string>& out) {
    if (const auto* sym = std::get_if<SymbolicSet>(&set)) {
        collect_term_vars(sym->value, out);
        collect_term_vars(sym->annotation, out);
        for (const auto& c : sym->condition) {
            collect_literal_vars(c.lit, out);
            collect_term_vars(c.annotation, out);
        }
        return;
    }
    for (const auto& e : std::get<GroundSet>(set)) {
        collect_term_vars(e.value, out);
        collect_term_vars(e.grade, out);
        for (const auto& c : e.condition) {
            collect_literal_vars(c.lit, out);
            collect_term_vars(c.annotation, out);
        }
    }
}

// Collects every variable of a preference rule; aggregates whose set
// object address equals `skip_set` are left out (used to split a rule
// into "inside S" and "outside S" occurrences).
inline void collect_combination_vars(const Combination& c, std::set<std::string>& out,
                                     const FuzzySetTerm* skip_set = nullptr) {
    switch (c.kind) {
    case Combination::Kind::Literal:
        collect_literal_vars(c.lit.lit, out);
        collect_term_vars(c.lit.annotation, out);
        return;
    case Combination::Kind::Aggregate:
        if (&c.agg.aggregate.set != skip_set) collect_set_vars(c.agg.aggregate.set, out);
        collect_term_vars(c.agg.guard, out);
        collect_term_vars(c.agg.annotation, out);
        return;
    case Combination::Kind::Opt:
        if (&c.opt.aggregate.set != skip_set) collect_set_vars(c.opt.aggregate.set, out);
        return;
    case Combination::Kind::And:
    case Combination::Kind::Or:
        for (const auto& ch : c.children) collect_combination_vars(ch, out, skip_set);
        return;
    }
}

inline void collect_pref_rule_vars(const FuzzyPreferenceRule& rule, std::set<std::string>& out,
                                   const FuzzySetTerm* skip_set = nullptr) {
    for (const auto& c : rule.head) collect_combination_vars(c, out, skip_set);
    for (const auto& item : rule.body) {
        if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
            collect_literal_vars(lit->lit, out);
            collect_term_vars(lit->annotation, out);
        } else {
            const auto& agg = std::get<AggregateAtom>(item);
            if (&agg.aggregate.set != skip_set) collect_set_vars(agg.aggregate.set, out);
            collect_term_vars(agg.guard, out);
            collect_term_vars(agg.annotation, out);
        }
    }
}

// Variables occurring in S and nowhere else in the host rule.
inline std::set<std::string> local_variables(const FuzzyAggregate& agg,
                                             const FuzzyPreferenceRule& host) {
    std::set<std::string> inside;
    collect_set_vars(agg.set, inside);
    std::set<std::string> outside;
    collect_pref_rule_vars(host, outside, &agg.set);
    std::set<std::string> out;
    for (const auto& v : inside)
        if (!outside.count(v)) out.insert(v);
    return out;
}

// ---- Herbrand universe ---------------------------------------------------

namespace validate_detail {

inline void collect_ground_terms(const Term& t, std::vector<Term>& out) {
    switch (t.kind) {
    case TermKind::Number:
    case TermKind::Symbol:
        out.push_back(t);
        return;
    case TermKind::Variable:
        return;
    case TermKind::Function:
        if (t.is_ground()) out.push_back(t);
        for (const auto& a : t.args) collect_ground_terms(a, out);
        return;
    case TermKind::Arith:
        for (const auto& a : t.args) collect_ground_terms(a, out);
        return;
    }
}

inline void collect_literal_terms(const Literal& l, std::vector<Term>& out) {
    for (const auto& a : l.args) collect_ground_terms(a, out);
}

inline void collect_set_terms(const FuzzySetTerm& set, std::vector<Term>& out) {
    if (const auto* sym = std::get_if<SymbolicSet>(&set)) {
        collect_ground_terms(sym->value, out);
        for (const auto& c : sym->condition) collect_literal_terms(c.lit, out);
        return;
    }
    for (const auto& e : std::get<GroundSet>(set)) {
        collect_ground_terms(e.value, out);
        for (const auto& c : e.condition) collect_literal_terms(c.lit, out);
    }
}

inline void collect_combination_terms(const Combination& c, std::vector<Term>& out) {
    switch (c.kind) {
    case Combination::Kind::Literal: collect_literal_terms(c.lit.lit, out); return;
    case Combination::Kind::Aggregate:
        collect_set_terms(c.agg.aggregate.set, out);
        collect_ground_terms(c.agg.guard, out);
        return;
    case Combination::Kind::Opt: collect_set_terms(c.opt.aggregate.set, out); return;
    case Combination::Kind::And:
    case Combination::Kind::Or:
        for (const auto& ch : c.children) collect_combination_terms(ch, out);
        return;
    }
}

} // namespace validate_detail

// The grounding domain: every ground term textually present at term level
// (constants, numeric literals, and ground function terms with their
// subterms).  Annotation expressions do not contribute.
inline std::vector<Term> herbrand_universe(const Program& p) {
    std::vector<Term> out;
    using namespace validate_detail;
    for (const auto& rule : p.gen) {
        for (const auto& l : rule.head) collect_literal_terms(l.lit, out);
        for (const auto& l : rule.body) collect_literal_terms(l.lit, out);
        for (const auto& g : rule.guards) {
            collect_ground_terms(g.lhs, out);
            collect_ground_terms(g.rhs, out);
        }
    }
    for (const auto& rule : p.pref) {
        for (const auto& c : rule.head) collect_combination_terms(c, out);
        for (const auto& item : rule.body) {
            if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
                collect_literal_terms(lit->lit, out);
            } else {
                const auto& agg = std::get<AggregateAtom>(item);
                collect_set_terms(agg.aggregate.set, out);
                collect_ground_terms(agg.guard, out);
            }
        }
    }
    std::sort(out.begin(), out.end(), term_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- validation -----------------------------------------------------------

namespace validate_detail {

inline bool annotation_shape_ok(const Term& t) {
    switch (t.kind) {
    case TermKind::Number:
    case TermKind::Variable:
        return true;
    case TermKind::Symbol:
    case TermKind::Function:
        return false;
    case TermKind::Arith:
        return annotation_shape_ok(t.args[0]) && annotation_shape_ok(t.args[1]);
    }
    return false;
}

struct Validator {
    std::vector<Diagnostic> diags;
    std::map<std::string, std::set<size_t>> arities;

    void note_literal(const Literal& l) { arities[l.predicate].insert(l.args.size()); }

    void check_annotation(const Term& ann, const SourceSpan& span) {
        if (!annotation_shape_ok(ann)) {
            diags.push_back(make_error(
                "annotation may only use constants, variables, and {+,-,*,/,min,max}", span));
            return;
        }
        if (ann.kind == TermKind::Number && !(ann.number >= 0.0 && ann.number <= 1.0))
            diags.push_back(make_error("annotation constant outside [0,1]", span));
    }

    void check_condition(const std::vector<AnnotatedLiteral>& condition, const SourceSpan& span) {
        for (const auto& c : condition) {
            if (c.naf)
                diags.push_back(
                    make_error("set conditions are conjunctions of positive literals", span));
            note_literal(c.lit);
            check_annotation(c.annotation, span);
        }
    }

    void check_set(const FuzzySetTerm& set, const SourceSpan& span) {
        if (const auto* sym = std::get_if<SymbolicSet>(&set)) {
            check_annotation(sym->annotation, span);
            check_condition(sym->condition, span);
            return;
        }
        for (const auto& e : std::get<GroundSet>(set)) {
            check_annotation(e.grade, span);
            check_condition(e.condition, span);
            std::set<std::string> vars;
            collect_term_vars(e.value, vars);
            if (!vars.empty())
                diags.push_back(make_error("ground set entry contains variables", span));
        }
    }

    void check_unbound(const std::set<std::string>& used_term,
                       const std::set<std::string>& used_grade, const BoundVars& bound,
                       const std::set<std::string>& ignore, const SourceSpan& span) {
        for (const auto& v : used_term) {
            if (ignore.count(v)) continue;
            if (!bound.term.count(v)) {
                if (bound.grade.count(v))
                    diags.push_back(make_error("annotation variable '" + v +
                                                   "' used in term position",
                                               span));
                else
                    diags.push_back(make_error(
                        "unsafe variable '" + v +
                            "': it does not occur in a positive body literal",
                        span));
            }
        }
        for (const auto& v : used_grade) {
            if (ignore.count(v)) continue;
            if (!bound.binds(v))
                diags.push_back(make_error(
                    "unsafe variable '" + v + "': it does not occur in a positive body literal",
                    span));
        }
    }

    void check_gen_rule(const GeneratorRule& rule) {
        BoundVars bound;
        for (const auto& l : rule.body) bind_from_literal(l, bound);

        std::set<std::string> used_term, used_grade;
        for (const auto& l : rule.head) {
            note_literal(l.lit);
            check_annotation(l.annotation, rule.span);
            collect_literal_vars(l.lit, used_term);
            collect_term_vars(l.annotation, used_grade);
        }
        for (const auto& l : rule.body) {
            note_literal(l.lit);
            check_annotation(l.annotation, rule.span);
            collect_literal_vars(l.lit, used_term);
            // a bare-variable annotation on a positive literal is a binder
            if (l.naf || !l.annotation.is_variable())
                collect_term_vars(l.annotation, used_grade);
        }
        for (const auto& g : rule.guards) {
            collect_term_vars(g.lhs, used_term);
            collect_term_vars(g.rhs, used_term);
        }
        check_unbound(used_term, used_grade, bound, {}, rule.span);

        if (rule.head.size() >= 2 && (!rule.body.empty() || !rule.guards.empty()))
            diags.push_back(make_error(
                "disjunction is only supported in facts (unsupported fragment)", rule.span));
    }

    void collect_sets(const Combination& c, std::vector<const FuzzyAggregate*>& out) {
        switch (c.kind) {
        case Combination::Kind::Literal: return;
        case Combination::Kind::Aggregate: out.push_back(&c.agg.aggregate); return;
        case Combination::Kind::Opt: out.push_back(&c.opt.aggregate); return;
        case Combination::Kind::And:
        case Combination::Kind::Or:
            for (const auto& ch : c.children) collect_sets(ch, out);
            return;
        }
    }

    void check_combination_leaves(const Combination& c, const SourceSpan& span) {
        switch (c.kind) {
        case Combination::Kind::Literal:
            note_literal(c.lit.lit);
            check_annotation(c.lit.annotation, span);
            return;
        case Combination::Kind::Aggregate:
            check_set(c.agg.aggregate.set, span);
            check_annotation(c.agg.annotation, span);
            return;
        case Combination::Kind::Opt: check_set(c.opt.aggregate.set, span); return;
        case Combination::Kind::And:
        case Combination::Kind::Or:
            for (const auto& ch : c.children) check_combination_leaves(ch, span);
            return;
        }
    }

    // Variable uses of a head combination outside its fuzzy sets (set
    // internals are checked per set, against the set's own bindings).
    void collect_outside_set_uses(const Combination& c, std::set<std::string>& used_term,
                                  std::set<std::string>& used_grade) {
        switch (c.kind) {
        case Combination::Kind::Literal:
            collect_literal_vars(c.lit.lit, used_term);
            collect_term_vars(c.lit.annotation, used_grade);
            return;
        case Combination::Kind::Aggregate:
            collect_term_vars(c.agg.guard, used_term);
            collect_term_vars(c.agg.annotation, used_grade);
            return;
        case Combination::Kind::Opt: return;
        case Combination::Kind::And:
        case Combination::Kind::Or:
            for (const auto& ch : c.children) collect_outside_set_uses(ch, used_term, used_grade);
            return;
        }
    }

    void check_pref_rule(const FuzzyPreferenceRule& rule) {
        if (rule.head.empty())
            diags.push_back(make_error("preference rule needs at least one head combination",
                                       rule.span));

        BoundVars bound;
        for (const auto& item : rule.body)
            if (const auto* lit = std::get_if<AnnotatedLiteral>(&item))
                bind_from_literal(*lit, bound);

        std::vector<const FuzzyAggregate*> aggs;
        for (const auto& c : rule.head) {
            check_combination_leaves(c, rule.span);
            collect_sets(c, aggs);
        }
        for (const auto& item : rule.body) {
            if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
                note_literal(lit->lit);
                check_annotation(lit->annotation, rule.span);
            } else {
                const auto& agg = std::get<AggregateAtom>(item);
                check_set(agg.aggregate.set, rule.span);
                check_annotation(agg.annotation, rule.span);
                aggs.push_back(&agg.aggregate);
            }
        }

        // Local variables must be bound inside their own set condition;
        // everything else must be bound by the positive body.
        std::set<std::string> all_locals;
        for (const auto* agg : aggs) {
            std::set<std::string> locals = local_variables(*agg, rule);
            all_locals.insert(locals.begin(), locals.end());
            std::set<std::string> inside;
            collect_set_vars(agg->set, inside);
            for (const auto& v : inside)
                if (!locals.count(v) && bound.grade.count(v) && !bound.term.count(v))
                    diags.push_back(make_error("annotation variable '" + v +
                                                   "' bound in the rule body cannot occur "
                                                   "inside a fuzzy set",
                                               rule.span));
            if (const auto* sym = std::get_if<SymbolicSet>(&agg->set)) {
                BoundVars set_bound = bound;
                for (const auto& c : sym->condition) bind_from_literal(c, set_bound);
                std::set<std::string> used_term, used_grade;
                collect_term_vars(sym->value, used_term);
                collect_term_vars(sym->annotation, used_grade);
                for (const auto& c : sym->condition) {
                    collect_literal_vars(c.lit, used_term);
                    if (!c.annotation.is_variable())
                        collect_term_vars(c.annotation, used_grade);
                }
                check_unbound(used_term, used_grade, set_bound, {}, rule.span);
            }
        }

        std::set<std::string> used_term, used_grade;
        for (const auto& c : rule.head) collect_outside_set_uses(c, used_term, used_grade);
        for (const auto& item : rule.body) {
            if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
                collect_literal_vars(lit->lit, used_term);
                if (lit->naf || !lit->annotation.is_variable())
                    collect_term_vars(lit->annotation, used_grade);
            } else {
                const auto& agg = std::get<AggregateAtom>(item);
                collect_term_vars(agg.guard, used_term);
                collect_term_vars(agg.annotation, used_grade);
            }
        }
        check_unbound(used_term, used_grade, bound, all_locals, rule.span);
    }
};

} // namespace validate_detail

// Reports every safety violation, arity conflict, and malformed
// annotation.  Empty result means the program is valid.
inline std::vector<Diagnostic> validate_program(const Program& p) {
    validate_detail::Validator v;
    for (const auto& rule : p.gen) v.check_gen_rule(rule);
    for (const auto& rule : p.pref) v.check_pref_rule(rule);
    for (const auto& [pred, sizes] : v.arities) {
        if (sizes.size() > 1) {
            std::string msg = "predicate '" + pred + "' used with conflicting arities:";
            for (size_t a : sizes) msg += ' ' + std::to_string(a);
            v.diags.push_back(make_error(msg));
        }
    }
    return v.diags;
}

} // namespace faso
