#pragma once

// Independent reference implementations backing the differential tests:
//
//  * naive_generate — an all-choice-combinations interpreter for the
//    ground generator fragment, written against the semantics from
//    scratch (own stratification, own closure, own model check);
//  * ClassicalOracle — a boolean answer set optimization ranker for
//    annotation-1 programs;
//  * random_program — a generator of small propositional programs.
//
// None of these reuse the engine's solving path.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <faso/faso.hpp>

namespace oracle {

using faso::AggFunc;
using faso::AggregateAtom;
using faso::AnnotatedLiteral;
using faso::Combination;
using faso::FuzzyAnswerSet;
using faso::FuzzyPreferenceRule;
using faso::GeneratorRule;
using faso::GroundProgram;
using faso::GroundSet;
using faso::Literal;
using faso::LiteralLess;
using faso::OptAggregate;
using faso::OptKind;
using faso::PrefBodyItem;
using faso::Program;
using faso::Rel;
using faso::SetEntry;
using faso::Term;
using faso::TermKind;
using faso::Tolerance;

// ---- tiny independent expression evaluator ---------------------------------

inline std::optional<double> xeval(const Term& t, const std::map<std::string, double>& env) {
    if (t.kind == TermKind::Number) return t.number;
    if (t.kind == TermKind::Variable) {
        auto it = env.find(t.name);
        return it == env.end() ? std::nullopt : std::optional<double>(it->second);
    }
    if (t.kind != TermKind::Arith) return std::nullopt;
    auto a = xeval(t.args[0], env);
    auto b = xeval(t.args[1], env);
    if (!a || !b) return std::nullopt;
    switch (t.op) {
    case faso::ArithOp::Add: return *a + *b;
    case faso::ArithOp::Sub: return *a - *b;
    case faso::ArithOp::Mul: return *a * *b;
    case faso::ArithOp::Div: return *b == 0.0 ? std::nullopt : std::optional<double>(*a / *b);
    case faso::ArithOp::Min: return std::min(*a, *b);
    case faso::ArithOp::Max: return std::max(*a, *b);
    }
    return std::nullopt;
}

// ---- naive generator interpreter -------------------------------------------

struct NaiveResult {
    bool error = false;
    std::string message;
    std::vector<FuzzyAnswerSet> models;
};

namespace detail {

using GradeMap = std::map<Literal, double, LiteralLess>;

inline bool naive_body_holds(const GradeMap& I, const std::vector<AnnotatedLiteral>& body,
                             const Tolerance& tol) {
    std::map<std::string, double> env;
    for (const auto& l : body) {
        if (l.naf) continue;
        auto it = I.find(l.lit);
        if (it == I.end()) return false;
        if (l.annotation.kind == TermKind::Variable && !env.count(l.annotation.name))
            env[l.annotation.name] = it->second;
    }
    for (const auto& l : body) {
        auto mu = xeval(l.annotation, env);
        if (!mu) return false;
        auto it = I.find(l.lit);
        if (!l.naf) {
            if (it == I.end() || !tol.leq(*mu, it->second)) return false;
        } else {
            if (it != I.end() && tol.leq(*mu, it->second)) return false;
        }
    }
    return true;
}

inline std::optional<double> naive_head_grade(const GradeMap& I,
                                              const std::vector<AnnotatedLiteral>& body,
                                              const Term& annotation) {
    std::map<std::string, double> env;
    for (const auto& l : body) {
        if (l.naf) continue;
        auto it = I.find(l.lit);
        if (it == I.end()) return std::nullopt;
        if (l.annotation.kind == TermKind::Variable && !env.count(l.annotation.name))
            env[l.annotation.name] = it->second;
    }
    auto v = xeval(annotation, env);
    if (!v) return std::nullopt;
    return std::clamp(*v, 0.0, 1.0);
}

} // namespace detail

inline NaiveResult naive_generate(const GroundProgram& g, const Tolerance& tol) {
    using detail::GradeMap;
    NaiveResult out;

    // own stratification: longest-path relaxation over predicate names
    std::map<std::string, int> level;
    for (const auto& r : g.gen) {
        for (const auto& l : r.head) level.emplace(l.lit.predicate, 0);
        for (const auto& l : r.body) level.emplace(l.lit.predicate, 0);
    }
    for (size_t round = 0;; ++round) {
        bool changed = false;
        for (const auto& r : g.gen) {
            if (r.is_constraint()) continue;
            for (const auto& h : r.head)
                for (const auto& b : r.body) {
                    int need = level[b.lit.predicate] + (b.naf ? 1 : 0);
                    if (level[h.lit.predicate] < need) {
                        level[h.lit.predicate] = need;
                        changed = true;
                    }
                }
        }
        if (!changed) break;
        if (round > level.size() + 1) {
            out.error = true;
            out.message = "not stratified";
            return out;
        }
    }
    int max_level = 0;
    for (const auto& [p, l] : level) max_level = std::max(max_level, l);

    std::vector<size_t> choice_facts;
    for (size_t i = 0; i < g.gen.size(); ++i) {
        const auto& r = g.gen[i];
        if (r.is_disjunctive_fact()) choice_facts.push_back(i);
        if (r.head.size() >= 2 && !r.is_fact()) {
            out.error = true;
            out.message = "disjunctive non-fact";
            return out;
        }
    }

    std::vector<GradeMap> results;
    std::vector<size_t> pick(choice_facts.size(), 0);

    auto run_one = [&]() {
        GradeMap I;
        for (size_t k = 0; k < choice_facts.size(); ++k) {
            const auto& head = g.gen[choice_facts[k]].head[pick[k]];
            auto v = xeval(head.annotation, {});
            if (!v) return;
            double grade = std::clamp(*v, 0.0, 1.0);
            auto it = I.find(head.lit);
            if (it == I.end() || it->second < grade) I[head.lit] = grade;
        }
        for (int lvl = 0; lvl <= max_level; ++lvl) {
            for (bool changed = true; changed;) {
                changed = false;
                for (const auto& r : g.gen) {
                    if (r.is_constraint() || r.is_disjunctive_fact()) continue;
                    if (level[r.head.front().lit.predicate] != lvl) continue;
                    if (!detail::naive_body_holds(I, r.body, tol)) continue;
                    auto grade = detail::naive_head_grade(I, r.body, r.head.front().annotation);
                    if (!grade) continue;
                    auto it = I.find(r.head.front().lit);
                    if (it == I.end() || it->second < *grade) {
                        I[r.head.front().lit] = *grade;
                        changed = true;
                    }
                }
            }
        }
        // model check: every rule satisfied, no constraint fires, consistent
        for (const auto& r : g.gen) {
            if (r.is_constraint()) {
                if (detail::naive_body_holds(I, r.body, tol)) return;
                continue;
            }
            if (r.is_disjunctive_fact()) continue;
            if (!detail::naive_body_holds(I, r.body, tol)) continue;
            auto grade = detail::naive_head_grade(I, r.body, r.head.front().annotation);
            auto it = I.find(r.head.front().lit);
            if (!grade || it == I.end() || !tol.leq(*grade, it->second)) return;
        }
        for (const auto& [lit, grade] : I) {
            if (lit.negated || !tol.gt(grade, 0.0)) continue;
            auto other = I.find(faso::complement(lit));
            if (other != I.end() && tol.gt(other->second, 0.0)) return;
        }
        results.push_back(I);
    };

    // recursive enumeration of choice combinations
    auto enumerate = [&](auto&& self, size_t k) -> void {
        if (k == choice_facts.size()) {
            run_one();
            return;
        }
        for (size_t d = 0; d < g.gen[choice_facts[k]].head.size(); ++d) {
            pick[k] = d;
            self(self, k + 1);
        }
    };
    enumerate(enumerate, 0);

    // dedupe and package
    for (const auto& I : results) {
        bool dup = false;
        for (const auto& seen : out.models) {
            if (seen.size() != I.size()) continue;
            bool same = true;
            auto it = seen.literals().begin();
            for (const auto& [lit, grade] : I) {
                if (!(it->first == lit) || !tol.eq(it->second, grade)) {
                    same = false;
                    break;
                }
                ++it;
            }
            if (same) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        FuzzyAnswerSet model(static_cast<int>(out.models.size()) + 1);
        for (const auto& [lit, grade] : I) model.join_assign(lit, grade);
        out.models.push_back(std::move(model));
    }
    return out;
}

// Set equality of literal->grade maps at epsilon, ignoring order.
inline bool same_model_sets(const std::vector<FuzzyAnswerSet>& a,
                            const std::vector<FuzzyAnswerSet>& b, const Tolerance& tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ma : a) {
        bool found = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (ma.equals(b[j], tol)) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

// ---- classical answer set optimization oracle -------------------------------

// Boolean semantics for annotation-1 programs: a literal holds or it does
// not; every grade is 1.  Rankings follow the same case analyses with the
// grade comparisons collapsed.
class ClassicalOracle {
  public:
    ClassicalOracle(const Program& program, const Tolerance& tol) : tol_(tol) {
        GroundProgram g{program.gen, program.pref};
        NaiveResult r = naive_generate(g, tol);
        error_ = r.error;
        for (const auto& model : r.models) {
            std::set<Literal, LiteralLess> atoms;
            for (const auto& [lit, grade] : model.literals()) atoms.insert(lit);
            models_.push_back(std::move(atoms));
        }
        rules_ = program.pref;
    }

    bool error() const { return error_; }
    size_t size() const { return models_.size(); }
    const std::set<Literal, LiteralLess>& model(size_t i) const { return models_[i]; }

    enum class Outcome { Left, Right, Equal, Incomparable };

    Outcome compare_rule(size_t i1, size_t i2, const FuzzyPreferenceRule& rule) const {
        auto s1 = sat_index(i1, rule);
        auto s2 = sat_index(i2, rule);
        if (!s1 && !s2) return Outcome::Equal;
        if (!s2) return Outcome::Left;
        if (!s1) return Outcome::Right;
        if (*s1 < *s2) return Outcome::Left;
        if (*s2 < *s1) return Outcome::Right;
        const Combination& c = rule.head[*s1 - 1];
        if (strict(i1, i2, c)) return Outcome::Left;
        if (strict(i2, i1, c)) return Outcome::Right;
        if (equal(i1, i2, c)) return Outcome::Equal;
        return Outcome::Incomparable;
    }

    Outcome pareto(size_t i1, size_t i2) const {
        bool left = false;
        bool right = false;
        bool okl = true;
        bool okr = true;
        bool alleq = true;
        for (const auto& r : rules_) {
            Outcome o = compare_rule(i1, i2, r);
            if (o == Outcome::Left) left = true, okr = false, alleq = false;
            if (o == Outcome::Right) right = true, okl = false, alleq = false;
            if (o == Outcome::Incomparable) okl = okr = false, alleq = false;
        }
        if (alleq) return Outcome::Equal;
        if (left && okl) return Outcome::Left;
        if (right && okr) return Outcome::Right;
        return Outcome::Incomparable;
    }

    Outcome maximal(size_t i1, size_t i2) const {
        size_t c12 = 0;
        size_t c21 = 0;
        for (const auto& r : rules_) {
            Outcome o = compare_rule(i1, i2, r);
            if (o == Outcome::Left || o == Outcome::Equal) ++c12;
            if (o == Outcome::Right || o == Outcome::Equal) ++c21;
        }
        if (c12 > c21) return Outcome::Left;
        if (c21 > c12) return Outcome::Right;
        return Outcome::Equal;
    }

    std::vector<size_t> optimal(bool use_maximal) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < models_.size(); ++i) {
            bool dominated = false;
            for (size_t j = 0; j < models_.size() && !dominated; ++j) {
                if (j == i) continue;
                Outcome o = use_maximal ? maximal(j, i) : pareto(j, i);
                if (o == Outcome::Left) dominated = true;
            }
            if (!dominated) out.push_back(i);
        }
        return out;
    }

  private:
    bool holds(size_t i, const Literal& lit) const { return models_[i].count(lit) != 0; }

    // f(S_I) for boolean interpretations: grade component 1, value
    // component from the entries whose condition holds.
    std::optional<double> agg_value(size_t i, const AggregateAtom& atom) const {
        const auto* ground = std::get_if<GroundSet>(&atom.aggregate.set);
        if (!ground) return std::nullopt;
        std::vector<double> xs;
        for (const auto& e : *ground) {
            bool ok = true;
            for (const auto& c : e.condition)
                if (!holds(i, c.lit)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            if (!e.value.is_number()) return std::nullopt;
            xs.push_back(e.value.number);
        }
        switch (atom.aggregate.func) {
        case AggFunc::Count: return static_cast<double>(xs.size());
        case AggFunc::Sum: {
            double s = 0;
            for (double x : xs) s += x;
            return s;
        }
        case AggFunc::Times: {
            double s = 1;
            for (double x : xs) s *= x;
            return s;
        }
        case AggFunc::Min:
            if (xs.empty()) return std::nullopt;
            return *std::min_element(xs.begin(), xs.end());
        case AggFunc::Max:
            if (xs.empty()) return std::nullopt;
            return *std::max_element(xs.begin(), xs.end());
        case AggFunc::ImplicitSingleton:
            if (xs.size() != 1) return std::nullopt;
            return xs.front();
        }
        return std::nullopt;
    }

    bool agg_atom_sat(size_t i, const AggregateAtom& atom) const {
        auto v = agg_value(i, atom);
        bool pos = v && atom.guard.is_number() && tol_.compare(*v, atom.relation, atom.guard.number);
        return atom.naf ? !pos : pos;
    }

    bool opt_sat(size_t i, const OptAggregate& opt) const {
        AggregateAtom probe;
        probe.aggregate = opt.aggregate;
        auto mine = agg_value(i, probe);
        if (!mine) return false;
        for (size_t j = 0; j < models_.size(); ++j) {
            auto other = agg_value(j, probe);
            if (!other) continue;
            switch (opt.kind) {
            case OptKind::MaxValue:
            case OptKind::MaxValueGrade:
                if (!tol_.leq(*other, *mine)) return false;
                break;
            case OptKind::MinValue:
            case OptKind::MinValueGrade:
                if (!tol_.leq(*mine, *other)) return false;
                break;
            case OptKind::MaxGrade:
            case OptKind::MinGrade:
                break; // grades are uniformly 1
            }
        }
        return true;
    }

    bool sat(size_t i, const Combination& c) const {
        switch (c.kind) {
        case Combination::Kind::Literal:
            return c.lit.naf ? !holds(i, c.lit.lit) : holds(i, c.lit.lit);
        case Combination::Kind::Aggregate: return agg_atom_sat(i, c.agg);
        case Combination::Kind::Opt: return opt_sat(i, c.opt);
        case Combination::Kind::And: return sat(i, c.children[0]) && sat(i, c.children[1]);
        case Combination::Kind::Or: return sat(i, c.children[0]) || sat(i, c.children[1]);
        }
        return false;
    }

    bool body_sat(size_t i, const FuzzyPreferenceRule& rule) const {
        for (const auto& item : rule.body) {
            if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
                bool h = holds(i, lit->lit);
                if (lit->naf ? h : !h) return false;
            } else if (!agg_atom_sat(i, std::get<AggregateAtom>(item))) {
                return false;
            }
        }
        return true;
    }

    std::optional<size_t> sat_index(size_t i, const FuzzyPreferenceRule& rule) const {
        if (!body_sat(i, rule)) return std::nullopt;
        for (size_t k = 0; k < rule.head.size(); ++k)
            if (sat(i, rule.head[k])) return k + 1;
        return std::nullopt;
    }

    // strict preference at annotation 1: satisfaction asymmetry, plus the
    // bottom-vs-defined case of negated aggregate atoms
    bool strict(size_t i1, size_t i2, const Combination& c) const {
        bool s1 = sat(i1, c);
        bool s2 = sat(i2, c);
        if (!s1) return false;
        if (!s2) return true;
        switch (c.kind) {
        case Combination::Kind::Literal: return false; // grades equal (1 or undefined)
        case Combination::Kind::Aggregate: {
            if (!c.agg.naf) return false; // both defined, grades 1
            auto v1 = agg_value(i1, c.agg);
            auto v2 = agg_value(i2, c.agg);
            return !v1 && v2.has_value();
        }
        case Combination::Kind::Opt: return false;
        case Combination::Kind::And:
        case Combination::Kind::Or: {
            bool any = false;
            for (size_t t = 0; t < 2; ++t) {
                if (strict(i1, i2, c.children[t])) {
                    any = true;
                    continue;
                }
                if (!equal(i1, i2, c.children[t])) return false;
            }
            return any;
        }
        }
        return false;
    }

    bool equal(size_t i1, size_t i2, const Combination& c) const {
        bool s1 = sat(i1, c);
        bool s2 = sat(i2, c);
        if (!s1 && !s2) return true;
        if (s1 != s2) return false;
        switch (c.kind) {
        case Combination::Kind::Literal: return true;
        case Combination::Kind::Aggregate: {
            if (!c.agg.naf) return true;
            auto v1 = agg_value(i1, c.agg);
            auto v2 = agg_value(i2, c.agg);
            return v1.has_value() == v2.has_value();
        }
        case Combination::Kind::Opt: return true;
        case Combination::Kind::And:
            return equal(i1, i2, c.children[0]) && equal(i1, i2, c.children[1]);
        case Combination::Kind::Or: {
            int c12 = 0;
            int c21 = 0;
            for (size_t t = 0; t < 2; ++t) {
                if (strict(i1, i2, c.children[t]) || equal(i1, i2, c.children[t])) ++c12;
                if (strict(i2, i1, c.children[t]) || equal(i2, i1, c.children[t])) ++c21;
            }
            return c12 == c21;
        }
        }
        return false;
    }

    Tolerance tol_;
    bool error_ = false;
    std::vector<std::set<Literal, LiteralLess>> models_;
    std::vector<FuzzyPreferenceRule> rules_;
};

// ---- random propositional programs ------------------------------------------

struct RandomOptions {
    int max_choice_facts = 4;
    int max_derived_rules = 4;
    int max_constraints = 1;
    int max_pref_rules = 3;
    bool classical = false; // annotation 1 everywhere
    bool allow_naf = true;
    bool allow_aggregates = true;
};

class RandomProgramBuilder {
  public:
    RandomProgramBuilder(std::mt19937_64& rng, const RandomOptions& opts)
        : rng_(rng), opts_(opts) {}

    Program build() {
        Program p;
        int nchoice = 1 + pick(opts_.max_choice_facts);
        int atom_id = 0;
        for (int i = 0; i < nchoice; ++i) {
            GeneratorRule fact;
            int width = 2 + pick(2);
            for (int d = 0; d < width; ++d) {
                AnnotatedLiteral head;
                head.lit.predicate = "c" + std::to_string(atom_id++);
                head.annotation = grade_term();
                fact.head.push_back(std::move(head));
                choice_pool_.push_back(fact.head.back().lit);
            }
            p.gen.push_back(std::move(fact));
        }

        int nrules = pick(opts_.max_derived_rules + 1);
        for (int i = 0; i < nrules; ++i) {
            GeneratorRule rule;
            AnnotatedLiteral head;
            head.lit.predicate = "d" + std::to_string(i);
            head.annotation = grade_term();
            rule.head.push_back(head);
            int nbody = 1 + pick(2);
            for (int b = 0; b < nbody; ++b) {
                AnnotatedLiteral body;
                body.lit = lower_atom(i);
                body.annotation = grade_term();
                body.naf = opts_.allow_naf && pick(4) == 0;
                rule.body.push_back(std::move(body));
            }
            p.gen.push_back(std::move(rule));
            derived_pool_.push_back(head.lit);
        }

        int nconstraints = pick(opts_.max_constraints + 1);
        for (int i = 0; i < nconstraints; ++i) {
            GeneratorRule constraint;
            int nbody = 1 + pick(2);
            for (int b = 0; b < nbody; ++b) {
                AnnotatedLiteral body;
                body.lit = any_atom();
                body.annotation = grade_term();
                body.naf = opts_.allow_naf && pick(5) == 0;
                constraint.body.push_back(std::move(body));
            }
            p.gen.push_back(std::move(constraint));
        }

        int nprefs = 1 + pick(opts_.max_pref_rules);
        for (int i = 0; i < nprefs; ++i) {
            FuzzyPreferenceRule rule;
            int nheads = 1 + pick(3);
            for (int h = 0; h < nheads; ++h) rule.head.push_back(combination(2));
            int nbody = pick(3);
            for (int b = 0; b < nbody; ++b) {
                if (opts_.allow_aggregates && pick(4) == 0) {
                    rule.body.push_back(agg_atom());
                } else {
                    AnnotatedLiteral lit;
                    lit.lit = any_atom();
                    lit.annotation = grade_term();
                    lit.naf = pick(3) == 0;
                    rule.body.push_back(std::move(lit));
                }
            }
            p.pref.push_back(std::move(rule));
        }
        return p;
    }

  private:
    int pick(int n) { return n <= 0 ? 0 : static_cast<int>(rng_() % static_cast<size_t>(n)); }

    Term grade_term() {
        if (opts_.classical) return Term::make_number(1.0);
        static const double grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        return Term::make_number(grid[pick(10)]);
    }

    Literal any_atom() {
        if (!derived_pool_.empty() && pick(3) == 0)
            return derived_pool_[pick(static_cast<int>(derived_pool_.size()))];
        return choice_pool_[pick(static_cast<int>(choice_pool_.size()))];
    }

    // atoms usable in the body of derived rule i: choices and earlier
    // derived heads, which keep naf stratified by construction
    Literal lower_atom(int i) {
        int extra = std::min<int>(i, static_cast<int>(derived_pool_.size()));
        int total = static_cast<int>(choice_pool_.size()) + extra;
        int k = pick(total);
        if (k < static_cast<int>(choice_pool_.size())) return choice_pool_[k];
        return derived_pool_[k - static_cast<int>(choice_pool_.size())];
    }

    GroundSet ground_set() {
        GroundSet set;
        int n = pick(4);
        for (int i = 0; i < n; ++i) {
            SetEntry e;
            e.value = Term::make_number(1 + pick(4));
            e.grade = grade_term();
            int nc = pick(3);
            for (int c = 0; c < nc; ++c) {
                AnnotatedLiteral cond;
                cond.lit = any_atom();
                cond.annotation = grade_term();
                e.condition.push_back(std::move(cond));
            }
            set.push_back(std::move(e));
        }
        return set;
    }

    AggregateAtom agg_atom() {
        AggregateAtom atom;
        static const AggFunc funcs[] = {AggFunc::Sum, AggFunc::Times, AggFunc::Min, AggFunc::Max,
                                        AggFunc::Count};
        atom.aggregate.func = funcs[pick(5)];
        atom.aggregate.set = ground_set();
        static const Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Gt, Rel::Le, Rel::Ge};
        atom.relation = rels[pick(6)];
        atom.guard = Term::make_number(pick(8));
        atom.annotation = grade_term();
        atom.naf = pick(3) == 0;
        return atom;
    }

    OptAggregate opt_agg() {
        OptAggregate opt;
        static const OptKind kinds[] = {OptKind::MaxGrade,      OptKind::MinGrade,
                                        OptKind::MaxValue,      OptKind::MinValue,
                                        OptKind::MaxValueGrade, OptKind::MinValueGrade};
        opt.kind = kinds[pick(6)];
        static const AggFunc funcs[] = {AggFunc::Sum, AggFunc::Times, AggFunc::Min, AggFunc::Max,
                                        AggFunc::Count};
        opt.aggregate.func = funcs[pick(5)];
        opt.aggregate.set = ground_set();
        return opt;
    }

    Combination combination(int depth) {
        if (depth > 0 && pick(3) == 0) {
            auto kind = pick(2) == 0 ? Combination::Kind::And : Combination::Kind::Or;
            return Combination::make_connective(kind, combination(depth - 1),
                                                combination(depth - 1));
        }
        if (opts_.allow_aggregates && pick(4) == 0)
            return Combination::make_aggregate(agg_atom());
        if (opts_.allow_aggregates && pick(5) == 0) return Combination::make_opt(opt_agg());
        AnnotatedLiteral lit;
        lit.lit = any_atom();
        lit.annotation = grade_term();
        lit.naf = pick(4) == 0;
        return Combination::make_literal(std::move(lit));
    }

    std::mt19937_64& rng_;
    RandomOptions opts_;
    std::vector<Literal> choice_pool_;
    std::vector<Literal> derived_pool_;
};

inline Program random_program(std::mt19937_64& rng, const RandomOptions& opts) {
    return RandomProgramBuilder(rng, opts).build();
}

} // namespace oracle
