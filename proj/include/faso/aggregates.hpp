#pragma once

#include <optional>
#include <vector>

#include "faso/ast.hpp"
#include "faso/diagnostics.hpp"
#include "faso/generator.hpp"
#include "faso/interpretation.hpp"

namespace faso {

// Multiset of (value, grade) pairs; duplicates are kept.
using GradedMultiset = std::vector<std::pair<Term, double>>;

// Result of applying an aggregate function: a (value, grade) pair or
// undefined when the multiset lies outside the function's domain.
struct AggResult {
    Term value;
    double grade = 1.0;
};

using AggregateValue = std::optional<AggResult>;

// S_I: the pairs of the entries whose condition holds in I.  Constant
// condition annotations act as thresholds; annotation variables bind to
// the grades I assigns the condition literals.
inline GradedMultiset build_multiset(const GroundSet& set, const FuzzyAnswerSet& I,
                                     const Tolerance& tol) {
    using generator_detail::Env;
    GradedMultiset out;
    for (const auto& entry : set) {
        Env env;
        bool holds = true;
        for (const auto& cond : entry.condition) {
            if (cond.annotation.is_variable() && !env.count(cond.annotation.name)) {
                auto g = I.grade(cond.lit);
                if (!g) {
                    holds = false;
                    break;
                }
                env.emplace(cond.annotation.name, *g);
            }
        }
        if (holds) {
            for (const auto& cond : entry.condition) {
                auto mu = generator_detail::eval_annotation(cond.annotation, env);
                auto g = I.grade(cond.lit);
                if (!mu || !g || !tol.leq(*mu, *g)) {
                    holds = false;
                    break;
                }
            }
        }
        if (!holds) continue;
        auto u = generator_detail::eval_annotation(entry.grade, env);
        if (!u) continue; // unevaluable grade: the entry cannot contribute
        out.emplace_back(entry.value, *u);
    }
    return out;
}

// The five aggregate mappings plus the singleton abbreviation.  On the
// empty multiset sum_F yields (0,1), times_F yields (1,1), count_F yields
// (0,1); min_F and max_F are undefined.  Non-numeric values put the
// multiset outside the domain of every function except count_F and the
// singleton abbreviation.
inline AggregateValue eval_aggregate(AggFunc f, const GradedMultiset& m,
                                     std::vector<Diagnostic>* warnings = nullptr) {
    if (f == AggFunc::ImplicitSingleton) {
        if (m.size() != 1) return std::nullopt;
        return AggResult{m.front().first, m.front().second};
    }

    if (m.empty()) {
        switch (f) {
        case AggFunc::Sum: return AggResult{Term::make_number(0.0), 1.0};
        case AggFunc::Times: return AggResult{Term::make_number(1.0), 1.0};
        case AggFunc::Count: return AggResult{Term::make_number(0.0), 1.0};
        default: return std::nullopt;
        }
    }

    double min_grade = 1.0;
    for (const auto& [x, u] : m) min_grade = std::min(min_grade, u);

    if (f == AggFunc::Count)
        return AggResult{Term::make_number(static_cast<double>(m.size())), min_grade};

    double acc = (f == AggFunc::Times) ? 1.0 : 0.0;
    bool first = true;
    for (const auto& [x, u] : m) {
        if (!x.is_number()) return std::nullopt; // outside the domain of f
        switch (f) {
        case AggFunc::Sum: acc += x.number; break;
        case AggFunc::Times: acc *= x.number; break;
        case AggFunc::Min: acc = first ? x.number : std::min(acc, x.number); break;
        case AggFunc::Max: acc = first ? x.number : std::max(acc, x.number); break;
        default: break;
        }
        first = false;
    }
    if (!std::isfinite(acc)) {
        if (warnings)
            warnings->push_back(make_warning("aggregate value overflowed to a non-finite number"));
        return std::nullopt;
    }
    return AggResult{Term::make_number(acc), min_grade};
}

inline AggregateValue eval_aggregate(const FuzzyAggregate& agg, const FuzzyAnswerSet& I,
                                     const Tolerance& tol,
                                     std::vector<Diagnostic>* warnings = nullptr) {
    const auto* ground = std::get_if<GroundSet>(&agg.set);
    if (!ground) return std::nullopt; // symbolic sets must be instantiated first
    return eval_aggregate(agg.func, build_multiset(*ground, I, tol), warnings);
}

// Value-vs-guard comparison: numeric with tolerance when both sides are
// numbers; otherwise only (in)equality is decidable, structurally.
inline bool compare_guard(const Term& value, Rel rel, const Term& guard, const Tolerance& tol) {
    if (value.is_number() && guard.is_number()) return tol.compare(value.number, rel, guard.number);
    if (rel == Rel::Eq) return value == guard;
    if (rel == Rel::Ne) return !(value == guard);
    return false;
}

// Truth of a ground fuzzy aggregate atom w.r.t. I.  The positive atom
// holds when f(S_I) = (x, nu) is defined, x rel T holds, and mu <= nu;
// the naf atom holds when f(S_I) is undefined, or the comparison fails,
// or mu exceeds nu.
inline bool eval_aggregate_atom(const FuzzyAnswerSet& I, const AggregateAtom& atom,
                                const Tolerance& tol,
                                const std::map<std::string, double>& env = {},
                                std::vector<Diagnostic>* warnings = nullptr) {
    AggregateValue v = eval_aggregate(atom.aggregate, I, tol, warnings);
    auto mu = generator_detail::eval_annotation(atom.annotation, env);
    if (!atom.naf) {
        return v.has_value() && mu.has_value() && compare_guard(v->value, atom.relation, atom.guard, tol) &&
               tol.leq(*mu, v->grade);
    }
    if (!v.has_value()) return true;
    if (!compare_guard(v->value, atom.relation, atom.guard, tol)) return true;
    return !mu.has_value() || !tol.leq(*mu, v->grade);
}

} // namespace faso
