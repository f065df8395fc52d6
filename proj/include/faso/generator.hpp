#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faso/grounder.hpp"
#include "faso/interpretation.hpp"

namespace faso {

// Raised when the generator program falls outside the supported fragment:
// disjunctive facts (exclusive choice), non-disjunctive rules with
// stratified negation as failure, and constraints.
class FragmentError : public std::runtime_error {
  public:
    explicit FragmentError(const std::string& what) : std::runtime_error(what) {}
};

// Selection of one disjunct of one disjunctive fact.
struct ChoicePoint {
    size_t fact_index; // index into GroundProgram::gen
    size_t disjunct;   // index into that fact's head
};

struct StratifyResult {
    std::map<std::string, int> level;
    int max_level = 0;
    std::optional<std::string> error;

    bool ok() const { return !error.has_value(); }
    int level_of(const std::string& predicate) const {
        auto it = level.find(predicate);
        return it == level.end() ? 0 : it->second;
    }
};

// Assigns strata so that negation-as-failure dependencies point strictly
// downward; fails on programs with a cycle through naf.
inline StratifyResult stratify(const GroundProgram& g) {
    StratifyResult out;
    size_t npreds = 0;
    for (const auto& rule : g.gen) {
        for (const auto& l : rule.head)
            if (out.level.emplace(l.lit.predicate, 0).second) ++npreds;
        for (const auto& l : rule.body)
            if (out.level.emplace(l.lit.predicate, 0).second) ++npreds;
    }

    const int cap = static_cast<int>(npreds) + 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& rule : g.gen) {
            if (rule.is_constraint()) continue;
            for (const auto& head : rule.head) {
                int& hl = out.level[head.lit.predicate];
                for (const auto& b : rule.body) {
                    int required = out.level[b.lit.predicate] + (b.naf ? 1 : 0);
                    if (hl < required) {
                        if (required > cap) {
                            out.error = "program is not stratified: cycle through negation "
                                        "as failure involving predicate '" +
                                        head.lit.predicate + "'";
                            return out;
                        }
                        hl = required;
                        changed = true;
                    }
                }
                if (hl > out.max_level) out.max_level = hl;
            }
        }
    }
    return out;
}

namespace generator_detail {

using Env = std::map<std::string, double>;

inline std::optional<double> eval_annotation(const Term& t, const Env& env) {
    switch (t.kind) {
    case TermKind::Number: return t.number;
    case TermKind::Variable: {
        auto it = env.find(t.name);
        if (it == env.end()) return std::nullopt;
        return it->second;
    }
    case TermKind::Symbol:
    case TermKind::Function:
        return std::nullopt;
    case TermKind::Arith: {
        auto lhs = eval_annotation(t.args[0], env);
        auto rhs = eval_annotation(t.args[1], env);
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

// Satisfaction of a ground generator-rule body.  Bare annotation
// variables on positive literals bind to the grade the interpretation
// assigns; all other annotations act as thresholds.  A naf literal holds
// when its threshold is not met or the literal is undefined.
inline bool satisfies_gen_body(const FuzzyAnswerSet& I,
                               const std::vector<AnnotatedLiteral>& body, const Tolerance& tol,
                               Env& env) {
    for (const auto& l : body) {
        if (l.naf) continue;
        auto g = I.grade(l.lit);
        if (!g) return false;
        if (l.annotation.is_variable() && !env.count(l.annotation.name))
            env.emplace(l.annotation.name, *g);
    }
    for (const auto& l : body) {
        auto mu = eval_annotation(l.annotation, env);
        auto g = I.grade(l.lit);
        if (!l.naf) {
            if (!mu || !g || !tol.leq(*mu, *g)) return false;
        } else {
            if (!mu) return false;
            if (g && tol.leq(*mu, *g)) return false;
        }
    }
    return true;
}

} // namespace generator_detail

// Stratum-by-stratum closure under one disjunct choice per disjunctive
// fact.  Re-derivations combine by join (max); out-of-range head grades
// clamp into [0,1] with a warning.  Constraints are not checked here.
inline FuzzyAnswerSet least_fixpoint(const std::vector<ChoicePoint>& choices,
                                     const GroundProgram& g, const StratifyResult& strata,
                                     const Tolerance& tol,
                                     std::vector<Diagnostic>* warnings = nullptr) {
    using namespace generator_detail;
    FuzzyAnswerSet I;

    auto head_grade = [&](const AnnotatedLiteral& head, const Env& env) -> std::optional<double> {
        auto v = eval_annotation(head.annotation, env);
        if (!v) return std::nullopt;
        if (*v < 0.0 || *v > 1.0) {
            if (warnings)
                warnings->push_back(
                    make_warning("grade " + number_to_string(*v) + " for " +
                                 literal_to_string(head.lit) + " clamped into [0,1]"));
            v = Grade::clamped(*v).value();
        }
        return v;
    };

    for (const auto& choice : choices) {
        const auto& head = g.gen[choice.fact_index].head[choice.disjunct];
        if (auto v = head_grade(head, {})) I.join_assign(head.lit, *v);
    }

    for (int stratum = 0; stratum <= strata.max_level; ++stratum) {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& rule : g.gen) {
                if (rule.is_constraint() || rule.is_disjunctive_fact()) continue;
                if (strata.level_of(rule.head.front().lit.predicate) != stratum) continue;
                Env env;
                if (!satisfies_gen_body(I, rule.body, tol, env)) continue;
                if (auto v = head_grade(rule.head.front(), env))
                    if (I.join_assign(rule.head.front().lit, *v)) changed = true;
            }
        }
    }
    return I;
}

// True when no ground constraint body is satisfied by the candidate.
inline bool check_constraints(const FuzzyAnswerSet& candidate, const GroundProgram& g,
                              const Tolerance& tol) {
    using namespace generator_detail;
    for (const auto& rule : g.gen) {
        if (!rule.is_constraint()) continue;
        Env env;
        if (satisfies_gen_body(candidate, rule.body, tol, env)) return false;
    }
    return true;
}

struct GenerateOptions {
    size_t max_models = static_cast<size_t>(-1);
};

// Enumerates the answer sets of the ground generator program: one
// candidate per choice combination, in lexicographic choice order, with
// constraint-violating and inconsistent candidates pruned and duplicate
// interpretations merged (lowest enumeration index wins).
inline std::vector<FuzzyAnswerSet> generate_answer_sets(const GroundProgram& g,
                                                        const Tolerance& tol,
                                                        const GenerateOptions& opts = {},
                                                        std::vector<Diagnostic>* warnings
                                                        = nullptr) {
    for (const auto& rule : g.gen)
        if (rule.head.size() >= 2 && !rule.is_fact())
            throw FragmentError(
                "disjunction is only supported in facts (unsupported fragment)");

    StratifyResult strata = stratify(g);
    if (!strata.ok()) throw FragmentError(*strata.error);

    std::vector<size_t> facts;
    for (size_t i = 0; i < g.gen.size(); ++i)
        if (g.gen[i].is_disjunctive_fact()) facts.push_back(i);

    std::vector<FuzzyAnswerSet> models;
    std::vector<size_t> odometer(facts.size(), 0);
    bool capped = false;

    for (;;) {
        std::vector<ChoicePoint> choices;
        choices.reserve(facts.size());
        for (size_t k = 0; k < facts.size(); ++k)
            choices.push_back(ChoicePoint{facts[k], odometer[k]});

        FuzzyAnswerSet candidate = least_fixpoint(choices, g, strata, tol, warnings);
        if (candidate.consistent(tol) && check_constraints(candidate, g, tol)) {
            bool dup = false;
            for (const auto& seen : models)
                if (seen.equals(candidate, tol)) {
                    dup = true;
                    break;
                }
            if (!dup) {
                if (models.size() >= opts.max_models) {
                    capped = true;
                    break;
                }
                candidate.set_index(static_cast<int>(models.size()) + 1);
                models.push_back(std::move(candidate));
            }
        }

        // advance the odometer; the last fact varies fastest
        size_t k = facts.size();
        for (; k > 0; --k) {
            if (++odometer[k - 1] < g.gen[facts[k - 1]].head.size()) break;
            odometer[k - 1] = 0;
        }
        if (k == 0) break;
    }

    if (capped && warnings)
        warnings->push_back(make_warning("model enumeration stopped at the --max-models cap"));
    return models;
}

} // namespace faso
