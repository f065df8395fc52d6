#pragma once

#include <map>
#include <optional>
#include <vector>

#include "faso/aggregates.hpp"

namespace faso {

enum class PairwiseOutcome { LeftStrict, RightStrict, Equal, Incomparable };
enum class Strategy { Pareto, Maximal };

inline const char* strategy_text(Strategy s) {
    return s == Strategy::Pareto ? "pareto" : "maximal";
}

// Satisfaction of a preference rule: the 1-based index of the minimal
// satisfied head combination, or irrelevance.
struct SatResult {
    std::optional<size_t> index;

    bool irrelevant() const { return !index.has_value(); }
    static SatResult satisfied(size_t i) { return SatResult{i}; }
    static SatResult irr() { return SatResult{std::nullopt}; }
};

struct RankResult {
    Strategy strategy = Strategy::Pareto;
    std::vector<int> optimal; // answer-set indices of the non-dominated sets
    std::vector<std::vector<PairwiseOutcome>> matrix; // matrix[i][j] = compare(I_i, I_j)
};

// Evaluates boolean combinations, preference rules, and the Pareto and
// Maximal rankings against a fixed universe of generated answer sets.
// Optimization aggregates are universe-relative (their satisfaction
// quantifies over every generated answer set), which is why the universe
// is part of the evaluator state.
class PreferenceEvaluator {
  public:
    using Env = std::map<std::string, double>;

    PreferenceEvaluator(const std::vector<FuzzyAnswerSet>& universe, Tolerance tol,
                        std::vector<Diagnostic>* warnings = nullptr)
        : universe_(universe), tol_(tol), warnings_(warnings) {}

    const std::vector<FuzzyAnswerSet>& universe() const { return universe_; }

    // ---- satisfaction ------------------------------------------------------

    bool satisfies_combination(const FuzzyAnswerSet& I, const Combination& c,
                               const Env& env = {}) const {
        switch (c.kind) {
        case Combination::Kind::Literal: return satisfies_literal(I, c.lit, env);
        case Combination::Kind::Aggregate:
            return eval_aggregate_atom(I, c.agg, tol_, env, warnings_);
        case Combination::Kind::Opt: return satisfies_opt(I, c.opt);
        case Combination::Kind::And:
            return satisfies_combination(I, c.children[0], env) &&
                   satisfies_combination(I, c.children[1], env);
        case Combination::Kind::Or:
            return satisfies_combination(I, c.children[0], env) ||
                   satisfies_combination(I, c.children[1], env);
        }
        return false;
    }

    // Returns the annotation bindings on success, nullopt when the body is
    // not satisfied.
    std::optional<Env> satisfies_body(const FuzzyAnswerSet& I,
                                      const FuzzyPreferenceRule& rule) const {
        Env env;
        for (const auto& item : rule.body) {
            const auto* lit = std::get_if<AnnotatedLiteral>(&item);
            if (!lit || lit->naf) continue;
            auto g = I.grade(lit->lit);
            if (!g) return std::nullopt;
            if (lit->annotation.is_variable() && !env.count(lit->annotation.name))
                env.emplace(lit->annotation.name, *g);
        }
        for (const auto& item : rule.body) {
            if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
                if (!satisfies_literal(I, *lit, env)) return std::nullopt;
            } else {
                const auto& atom = std::get<AggregateAtom>(item);
                if (!eval_aggregate_atom(I, atom, tol_, env, warnings_)) return std::nullopt;
            }
        }
        return env;
    }

    SatResult rule_sat_index(const FuzzyAnswerSet& I, const FuzzyPreferenceRule& rule) const {
        return rule_eval(I, rule).sat;
    }

    // ---- pairwise comparison ------------------------------------------------

    // I1 strictly preferred over I2 w.r.t. one boolean combination.
    bool strictly_preferred(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                            const Combination& c, const Env& env1 = {},
                            const Env& env2 = {}) const {
        bool s1 = satisfies_combination(I1, c, env1);
        bool s2 = satisfies_combination(I2, c, env2);
        if (!s1) return false;
        if (!s2) return true;

        switch (c.kind) {
        case Combination::Kind::Literal: {
            auto g1 = I1.grade(c.lit.lit);
            auto g2 = I2.grade(c.lit.lit);
            if (!c.lit.naf) return g1 && g2 && tol_.gt(*g1, *g2);
            if (!g1 && g2) return true;
            return g1 && g2 && tol_.lt(*g1, *g2);
        }
        case Combination::Kind::Aggregate: {
            AggregateValue v1 = eval_aggregate(c.agg.aggregate, I1, tol_, warnings_);
            AggregateValue v2 = eval_aggregate(c.agg.aggregate, I2, tol_, warnings_);
            if (!c.agg.naf) return v1 && v2 && tol_.lt(v2->grade, v1->grade);
            if (!v1 && v2) return true;
            return v1 && v2 && tol_.lt(v1->grade, v2->grade);
        }
        case Combination::Kind::Opt:
            return false; // only the satisfies-vs-not case applies
        case Combination::Kind::And:
        case Combination::Kind::Or: {
            bool any_strict = false;
            for (size_t t = 0; t < 2; ++t) {
                bool st = strictly_preferred(I1, I2, c.children[t], env1, env2);
                if (st) {
                    any_strict = true;
                    continue;
                }
                if (!equally_preferred(I1, I2, c.children[t], env1, env2)) return false;
            }
            return any_strict;
        }
        }
        return false;
    }

    // I1 and I2 equally preferred w.r.t. one boolean combination.
    bool equally_preferred(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                           const Combination& c, const Env& env1 = {},
                           const Env& env2 = {}) const {
        bool s1 = satisfies_combination(I1, c, env1);
        bool s2 = satisfies_combination(I2, c, env2);
        if (!s1 && !s2) return true;
        if (s1 != s2) return false;

        switch (c.kind) {
        case Combination::Kind::Literal: {
            auto g1 = I1.grade(c.lit.lit);
            auto g2 = I2.grade(c.lit.lit);
            if (!c.lit.naf) return g1 && g2 && tol_.eq(*g1, *g2);
            if (!g1 && !g2) return true;
            return g1 && g2 && tol_.eq(*g1, *g2);
        }
        case Combination::Kind::Aggregate: {
            AggregateValue v1 = eval_aggregate(c.agg.aggregate, I1, tol_, warnings_);
            AggregateValue v2 = eval_aggregate(c.agg.aggregate, I2, tol_, warnings_);
            if (!c.agg.naf) return v1 && v2 && tol_.eq(v1->grade, v2->grade);
            if (!v1 && !v2) return true;
            return v1 && v2 && tol_.eq(v1->grade, v2->grade);
        }
        case Combination::Kind::Opt:
            return true; // both satisfy
        case Combination::Kind::And:
            return equally_preferred(I1, I2, c.children[0], env1, env2) &&
                   equally_preferred(I1, I2, c.children[1], env1, env2);
        case Combination::Kind::Or: {
            // disjunction equality compares weak-preference counts over the operands
            int c12 = 0;
            int c21 = 0;
            for (size_t t = 0; t < 2; ++t) {
                if (at_least_as_preferred(I1, I2, c.children[t], env1, env2)) ++c12;
                if (at_least_as_preferred(I2, I1, c.children[t], env2, env1)) ++c21;
            }
            return c12 == c21;
        }
        }
        return false;
    }

    bool at_least_as_preferred(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                               const Combination& c, const Env& env1 = {},
                               const Env& env2 = {}) const {
        return strictly_preferred(I1, I2, c, env1, env2) ||
               equally_preferred(I1, I2, c, env1, env2);
    }

    PairwiseOutcome compare_rule(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                                 const FuzzyPreferenceRule& rule) const {
        const RuleEval& e1 = rule_eval(I1, rule);
        const RuleEval& e2 = rule_eval(I2, rule);
        if (e1.sat.irrelevant() && e2.sat.irrelevant()) return PairwiseOutcome::Equal;
        if (e1.sat.irrelevant()) return PairwiseOutcome::RightStrict;
        if (e2.sat.irrelevant()) return PairwiseOutcome::LeftStrict;
        size_t i = *e1.sat.index;
        size_t j = *e2.sat.index;
        if (i < j) return PairwiseOutcome::LeftStrict;
        if (j < i) return PairwiseOutcome::RightStrict;
        const Combination& c = rule.head[i - 1];
        if (strictly_preferred(I1, I2, c, e1.env, e2.env)) return PairwiseOutcome::LeftStrict;
        if (strictly_preferred(I2, I1, c, e2.env, e1.env)) return PairwiseOutcome::RightStrict;
        if (equally_preferred(I1, I2, c, e1.env, e2.env)) return PairwiseOutcome::Equal;
        return PairwiseOutcome::Incomparable;
    }

    // Pareto: strictly better on some rule, at least as good on all.
    PairwiseOutcome pareto_compare(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                                   const std::vector<FuzzyPreferenceRule>& rules) const {
        bool left = false;
        bool right = false;
        bool all_left_or_equal = true;
        bool all_right_or_equal = true;
        bool all_equal = true;
        for (const auto& rule : rules) {
            switch (compare_rule(I1, I2, rule)) {
            case PairwiseOutcome::LeftStrict:
                left = true;
                all_equal = false;
                all_right_or_equal = false;
                break;
            case PairwiseOutcome::RightStrict:
                right = true;
                all_equal = false;
                all_left_or_equal = false;
                break;
            case PairwiseOutcome::Equal: break;
            case PairwiseOutcome::Incomparable:
                all_equal = false;
                all_left_or_equal = false;
                all_right_or_equal = false;
                break;
            }
        }
        if (all_equal) return PairwiseOutcome::Equal;
        if (left && all_left_or_equal) return PairwiseOutcome::LeftStrict;
        if (right && all_right_or_equal) return PairwiseOutcome::RightStrict;
        return PairwiseOutcome::Incomparable;
    }

    // Maximal: weakly wins on strictly more rules; counts are totally
    // ordered, so incomparability cannot arise.
    PairwiseOutcome maximal_compare(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                                    const std::vector<FuzzyPreferenceRule>& rules) const {
        size_t c12 = 0;
        size_t c21 = 0;
        for (const auto& rule : rules) {
            PairwiseOutcome o = compare_rule(I1, I2, rule);
            if (o == PairwiseOutcome::LeftStrict || o == PairwiseOutcome::Equal) ++c12;
            if (o == PairwiseOutcome::RightStrict || o == PairwiseOutcome::Equal) ++c21;
        }
        if (c12 > c21) return PairwiseOutcome::LeftStrict;
        if (c21 > c12) return PairwiseOutcome::RightStrict;
        return PairwiseOutcome::Equal;
    }

    PairwiseOutcome compare(const FuzzyAnswerSet& I1, const FuzzyAnswerSet& I2,
                            const std::vector<FuzzyPreferenceRule>& rules,
                            Strategy strategy) const {
        return strategy == Strategy::Pareto ? pareto_compare(I1, I2, rules)
                                            : maximal_compare(I1, I2, rules);
    }

    // Full pairwise matrix and the non-dominated set.
    RankResult rank(const std::vector<FuzzyPreferenceRule>& rules, Strategy strategy) const {
        RankResult out;
        out.strategy = strategy;
        size_t n = universe_.size();
        out.matrix.assign(n, std::vector<PairwiseOutcome>(n, PairwiseOutcome::Equal));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                out.matrix[i][j] = compare(universe_[i], universe_[j], rules, strategy);
        for (size_t i = 0; i < n; ++i) {
            bool dominated = false;
            for (size_t j = 0; j < n && !dominated; ++j)
                if (j != i && out.matrix[j][i] == PairwiseOutcome::LeftStrict) dominated = true;
            if (!dominated) out.optimal.push_back(universe_[i].index());
        }
        return out;
    }

  private:
    struct RuleEval {
        SatResult sat = SatResult::irr();
        Env env;
    };

    bool satisfies_literal(const FuzzyAnswerSet& I, const AnnotatedLiteral& l,
                           const Env& env) const {
        auto g = I.grade(l.lit);
        if (l.naf && !g) return true;
        auto mu = generator_detail::eval_annotation(l.annotation, env);
        if (!mu || !g) return false;
        return l.naf ? !tol_.leq(*mu, *g) : tol_.leq(*mu, *g);
    }

    bool satisfies_opt(const FuzzyAnswerSet& I, const OptAggregate& opt) const {
        AggregateValue mine = eval_aggregate(opt.aggregate, I, tol_, warnings_);
        if (!mine) return false;
        for (const AggregateValue& other : universe_values(opt)) {
            if (!other) continue; // defined-vs-undefined satisfies the clause
            bool ok = true;
            switch (opt.kind) {
            case OptKind::MaxGrade: ok = tol_.leq(other->grade, mine->grade); break;
            case OptKind::MinGrade: ok = tol_.leq(mine->grade, other->grade); break;
            case OptKind::MaxValue: ok = value_leq(other->value, mine->value); break;
            case OptKind::MinValue: ok = value_leq(mine->value, other->value); break;
            case OptKind::MaxValueGrade:
                ok = value_leq(other->value, mine->value) &&
                     tol_.leq(other->grade, mine->grade);
                break;
            case OptKind::MinValueGrade:
                ok = value_leq(mine->value, other->value) &&
                     tol_.leq(mine->grade, other->grade);
                break;
            }
            if (!ok) return false;
        }
        return true;
    }

    bool value_leq(const Term& a, const Term& b) const {
        return a.is_number() && b.is_number() && tol_.leq(a.number, b.number);
    }

    const std::vector<AggregateValue>& universe_values(const OptAggregate& opt) const {
        auto it = opt_cache_.find(&opt);
        if (it != opt_cache_.end()) return it->second;
        std::vector<AggregateValue> values;
        values.reserve(universe_.size());
        for (const auto& I : universe_)
            values.push_back(eval_aggregate(opt.aggregate, I, tol_, warnings_));
        return opt_cache_.emplace(&opt, std::move(values)).first->second;
    }

    const RuleEval& rule_eval(const FuzzyAnswerSet& I, const FuzzyPreferenceRule& rule) const {
        auto key = std::make_pair(&rule, &I);
        auto it = rule_cache_.find(key);
        if (it != rule_cache_.end()) return it->second;
        RuleEval eval;
        if (auto env = satisfies_body(I, rule)) {
            eval.env = std::move(*env);
            for (size_t i = 0; i < rule.head.size(); ++i) {
                if (satisfies_combination(I, rule.head[i], eval.env)) {
                    eval.sat = SatResult::satisfied(i + 1);
                    break;
                }
            }
        }
        return rule_cache_.emplace(key, std::move(eval)).first->second;
    }

    const std::vector<FuzzyAnswerSet>& universe_;
    Tolerance tol_;
    std::vector<Diagnostic>* warnings_;
    mutable std::map<const OptAggregate*, std::vector<AggregateValue>> opt_cache_;
    mutable std::map<std::pair<const FuzzyPreferenceRule*, const FuzzyAnswerSet*>, RuleEval>
        rule_cache_;
};

} // namespace faso
