#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "faso/ast.hpp"
#include "faso/diagnostics.hpp"
#include "faso/interpretation.hpp"
#include "faso/validate.hpp"

namespace faso {

// Raised when grounding exceeds the configured instance budget.
class ResourceLimitError : public std::runtime_error {
  public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct GroundProgram {
    std::vector<GeneratorRule> gen;
    std::vector<FuzzyPreferenceRule> pref;

    Program to_program() const { return Program{gen, pref}; }
};

struct GroundingOptions {
    size_t instance_budget = 10'000'000;
};

namespace ground_detail {

struct Budget {
    size_t limit;
    size_t used = 0;

    void charge(size_t n = 1) {
        used += n;
        if (used > limit)
            throw ResourceLimitError("grounding exceeded the instance budget of " +
                                     std::to_string(limit));
    }
};

inline bool terms_equal_eps(const Term& a, const Term& b, const Tolerance& tol) {
    if (a.kind == TermKind::Number && b.kind == TermKind::Number)
        return tol.eq(a.number, b.number);
    if (a.kind != b.kind) return false;
    if (a.kind == TermKind::Symbol || a.kind == TermKind::Variable) return a.name == b.name;
    if (a.kind == TermKind::Function && a.name != b.name) return false;
    if (a.kind == TermKind::Arith && a.op != b.op) return false;
    if (a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!terms_equal_eps(a.args[i], b.args[i], tol)) return false;
    return true;
}

// Matches a (possibly non-ground) argument pattern against a ground term,
// extending theta.  Arithmetic subpatterns must be evaluable under the
// bindings collected so far; inverting arithmetic is not attempted.
inline bool match_term(const Term& pattern, const Term& value, Substitution& theta,
                       const Tolerance& tol) {
    switch (pattern.kind) {
    case TermKind::Variable: {
        auto it = theta.find(pattern.name);
        if (it != theta.end()) return terms_equal_eps(it->second, value, tol);
        theta.emplace(pattern.name, value);
        return true;
    }
    case TermKind::Number:
        return value.kind == TermKind::Number && tol.eq(pattern.number, value.number);
    case TermKind::Symbol:
        return value.kind == TermKind::Symbol && pattern.name == value.name;
    case TermKind::Function: {
        if (value.kind != TermKind::Function || pattern.name != value.name ||
            pattern.args.size() != value.args.size())
            return false;
        for (size_t i = 0; i < pattern.args.size(); ++i)
            if (!match_term(pattern.args[i], value.args[i], theta, tol)) return false;
        return true;
    }
    case TermKind::Arith: {
        auto v = evaluate_numeric(substitute(pattern, theta));
        return v && value.kind == TermKind::Number && tol.eq(*v, value.number);
    }
    }
    return false;
}

inline bool match_literal(const Literal& pattern, const Literal& value, Substitution& theta,
                          const Tolerance& tol) {
    if (pattern.negated != value.negated || pattern.predicate != value.predicate ||
        pattern.args.size() != value.args.size())
        return false;
    for (size_t i = 0; i < pattern.args.size(); ++i)
        if (!match_term(pattern.args[i], value.args[i], theta, tol)) return false;
    return true;
}

// Ground atoms that may become true in some candidate answer set,
// ignoring annotations, negation as failure, and constraints.  This
// over-approximation drives rule instantiation: instances whose positive
// body mentions an underivable atom can never fire and are not emitted.
class AtomIndex {
  public:
    using Key = std::tuple<bool, std::string, size_t>;

    bool insert(const Literal& l) {
        if (!present_.insert(l).second) return false;
        by_key_[Key{l.negated, l.predicate, l.args.size()}].push_back(l);
        return true;
    }

    const std::vector<Literal>& candidates(const Literal& pattern) const {
        static const std::vector<Literal> empty;
        auto it = by_key_.find(Key{pattern.negated, pattern.predicate, pattern.args.size()});
        return it == by_key_.end() ? empty : it->second;
    }

  private:
    std::set<Literal, LiteralLess> present_;
    std::map<Key, std::vector<Literal>> by_key_;
};

template <typename Callback>
void enumerate_matches(const std::vector<const AnnotatedLiteral*>& positives, size_t idx,
                       const AtomIndex& atoms, Substitution& theta, const Tolerance& tol,
                       Budget& budget, const Callback& cb) {
    if (idx == positives.size()) {
        budget.charge();
        cb(theta);
        return;
    }
    for (const Literal& atom : atoms.candidates(positives[idx]->lit)) {
        Substitution extended = theta;
        if (match_literal(positives[idx]->lit, atom, extended, tol))
            enumerate_matches(positives, idx + 1, atoms, extended, tol, budget, cb);
    }
}

enum class GuardState { True, False, Unevaluable };

inline GuardState eval_guard(const Guard& g, const Substitution& theta, const Tolerance& tol) {
    auto lhs = evaluate_numeric(substitute(g.lhs, theta));
    auto rhs = evaluate_numeric(substitute(g.rhs, theta));
    if (!lhs || !rhs) {
        // non-numeric operands still decide equality structurally
        Term l = fold_arithmetic(substitute(g.lhs, theta));
        Term r = fold_arithmetic(substitute(g.rhs, theta));
        if (l.is_ground() && r.is_ground() && is_arith_free(l) && is_arith_free(r)) {
            if (g.relation == Rel::Eq)
                return terms_equal_eps(l, r, tol) ? GuardState::True : GuardState::False;
            if (g.relation == Rel::Ne)
                return terms_equal_eps(l, r, tol) ? GuardState::False : GuardState::True;
        }
        return GuardState::Unevaluable;
    }
    return tol.compare(*lhs, g.relation, *rhs) ? GuardState::True : GuardState::False;
}

inline std::vector<const AnnotatedLiteral*> positive_body(const GeneratorRule& rule) {
    std::vector<const AnnotatedLiteral*> out;
    for (const auto& l : rule.body)
        if (!l.naf) out.push_back(&l);
    return out;
}

inline std::vector<const AnnotatedLiteral*> positive_body(const FuzzyPreferenceRule& rule) {
    std::vector<const AnnotatedLiteral*> out;
    for (const auto& item : rule.body)
        if (const auto* lit = std::get_if<AnnotatedLiteral>(&item))
            if (!lit->naf) out.push_back(lit);
    return out;
}

// Substitutes theta and folds ground arithmetic; nullopt when an
// arithmetic expression survives (non-numeric operands).
inline std::optional<Term> ground_term(const Term& t, const Substitution& theta) {
    Term out = fold_arithmetic(substitute(t, theta));
    if (!out.is_ground() || !is_arith_free(out)) return std::nullopt;
    return out;
}

inline std::optional<Literal> ground_literal(const Literal& l, const Substitution& theta) {
    Literal out = l;
    for (auto& a : out.args) {
        auto g = ground_term(a, theta);
        if (!g) return std::nullopt;
        a = std::move(*g);
    }
    return out;
}

// Annotations keep the variables that bind at evaluation time; fully
// numeric expressions fold to a constant, clamped onto the lattice with a
// warning when the caller asks for it (head positions do).
inline Term ground_annotation(const Term& ann, const Substitution& theta, const SourceSpan& span,
                              std::vector<Diagnostic>* warnings, bool clamp) {
    Term sub = substitute(ann, theta);
    if (auto v = evaluate_numeric(sub)) {
        if (clamp && (*v < 0.0 || *v > 1.0)) {
            if (warnings)
                warnings->push_back(make_warning(
                    "annotation value " + number_to_string(*v) + " clamped into [0,1]", span));
            return Term::make_number(Grade::clamped(*v).value());
        }
        return Term::make_number(*v);
    }
    return fold_arithmetic(sub);
}

inline void sort_substitutions(std::vector<Substitution>& thetas) {
    auto cmp = [](const Substitution& a, const Substitution& b) {
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (int c = term_compare(ia->second, ib->second); c != 0) return c < 0;
        }
        return a.size() < b.size();
    };
    std::sort(thetas.begin(), thetas.end(), cmp);
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
}

} // namespace ground_detail

// Substitutes global bindings inside a set term without touching local
// variables (locals are exactly the variables absent from theta).
inline FuzzySetTerm ground_set_globals(const FuzzySetTerm& set, const Substitution& theta) {
    if (const auto* sym = std::get_if<SymbolicSet>(&set)) {
        SymbolicSet out = *sym;
        out.value = substitute(out.value, theta);
        out.annotation = substitute(out.annotation, theta);
        for (auto& c : out.condition) {
            for (auto& a : c.lit.args) a = fold_arithmetic(substitute(a, theta));
            c.annotation = substitute(c.annotation, theta);
        }
        return out;
    }
    return set;
}

inline void ground_aggregate_parts(AggregateAtom& atom, const Substitution& theta,
                                   const SourceSpan& span, std::vector<Diagnostic>* warnings,
                                   bool& ok) {
    atom.aggregate.set = ground_set_globals(atom.aggregate.set, theta);
    auto guard = ground_detail::ground_term(atom.guard, theta);
    if (!guard) {
        ok = false;
        return;
    }
    atom.guard = std::move(*guard);
    atom.annotation = ground_detail::ground_annotation(atom.annotation, theta, span, warnings, false);
}

inline Combination ground_combination(const Combination& c, const Substitution& theta,
                                      const SourceSpan& span, std::vector<Diagnostic>* warnings,
                                      bool& ok) {
    switch (c.kind) {
    case Combination::Kind::Literal: {
        AnnotatedLiteral lit = c.lit;
        auto gl = ground_detail::ground_literal(lit.lit, theta);
        if (!gl) {
            ok = false;
            return c;
        }
        lit.lit = std::move(*gl);
        lit.annotation =
            ground_detail::ground_annotation(lit.annotation, theta, span, warnings, false);
        return Combination::make_literal(std::move(lit));
    }
    case Combination::Kind::Aggregate: {
        AggregateAtom atom = c.agg;
        ground_aggregate_parts(atom, theta, span, warnings, ok);
        return Combination::make_aggregate(std::move(atom));
    }
    case Combination::Kind::Opt: {
        OptAggregate opt = c.opt;
        opt.aggregate.set = ground_set_globals(opt.aggregate.set, theta);
        return Combination::make_opt(std::move(opt));
    }
    case Combination::Kind::And:
    case Combination::Kind::Or: {
        Combination lhs = ground_combination(c.children[0], theta, span, warnings, ok);
        Combination rhs = ground_combination(c.children[1], theta, span, warnings, ok);
        return Combination::make_connective(c.kind, std::move(lhs), std::move(rhs));
    }
    }
    ok = false;
    return c;
}

// ---- stage one: global variable replacement --------------------------------

// Replaces every global variable of every rule, evaluates ground
// arithmetic, deletes instances with false guards, and drops the guards
// that hold.  Fuzzy sets keep their local variables; they are expanded by
// ground_preference_sets once the answer sets exist.
inline GroundProgram ground_program(const Program& p, const Tolerance& tol,
                                    const GroundingOptions& opts = {},
                                    std::vector<Diagnostic>* warnings = nullptr) {
    using namespace ground_detail;
    Budget budget{opts.instance_budget};
    AtomIndex atoms;

    auto warn = [&](const std::string& msg, const SourceSpan& span) {
        if (warnings) warnings->push_back(make_warning(msg, span));
    };

    // seed with fact heads
    for (const auto& rule : p.gen) {
        if (!rule.is_fact()) continue;
        for (const auto& disjunct : rule.head) {
            auto lit = ground_literal(disjunct.lit, {});
            if (!lit) {
                warn("fact head with unevaluable arithmetic was dropped", rule.span);
                continue;
            }
            if (atoms.insert(*lit)) budget.charge();
        }
    }

    // closure over possibly-derivable atoms
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& rule : p.gen) {
            if (rule.is_fact() || rule.is_constraint()) continue;
            auto positives = positive_body(rule);
            Substitution theta;
            enumerate_matches(positives, 0, atoms, theta, tol, budget,
                              [&](const Substitution& th) {
                                  for (const auto& g : rule.guards)
                                      if (eval_guard(g, th, tol) != GuardState::True) return;
                                  for (const auto& disjunct : rule.head) {
                                      auto lit = ground_literal(disjunct.lit, th);
                                      if (lit && atoms.insert(*lit)) {
                                          budget.charge();
                                          changed = true;
                                      }
                                  }
                              });
        }
    }

    GroundProgram out;

    // generator rule instances, in input order with canonical
    // substitution order
    for (const auto& rule : p.gen) {
        if (rule.is_fact()) {
            GeneratorRule inst;
            inst.span = rule.span;
            for (const auto& disjunct : rule.head) {
                auto lit = ground_literal(disjunct.lit, {});
                if (!lit) continue;
                AnnotatedLiteral al;
                al.lit = std::move(*lit);
                al.annotation =
                    ground_annotation(disjunct.annotation, {}, rule.span, warnings, true);
                inst.head.push_back(std::move(al));
            }
            if (!inst.head.empty()) out.gen.push_back(std::move(inst));
            continue;
        }

        auto positives = positive_body(rule);
        std::vector<Substitution> thetas;
        Substitution theta;
        enumerate_matches(positives, 0, atoms, theta, tol, budget,
                          [&](const Substitution& th) { thetas.push_back(th); });
        sort_substitutions(thetas);

        for (const auto& th : thetas) {
            bool deleted = false;
            for (const auto& g : rule.guards) {
                GuardState s = eval_guard(g, th, tol);
                if (s == GuardState::Unevaluable)
                    warn("instance with unevaluable comparison guard was dropped", rule.span);
                if (s != GuardState::True) {
                    deleted = true;
                    break;
                }
            }
            if (deleted) continue;

            GeneratorRule inst;
            inst.span = rule.span;
            bool ok = true;
            for (const auto& disjunct : rule.head) {
                auto lit = ground_literal(disjunct.lit, th);
                if (!lit) {
                    warn("instance head with unevaluable arithmetic was dropped", rule.span);
                    ok = false;
                    break;
                }
                AnnotatedLiteral al;
                al.lit = std::move(*lit);
                al.annotation =
                    ground_annotation(disjunct.annotation, th, rule.span, warnings, true);
                inst.head.push_back(std::move(al));
            }
            if (!ok) continue;
            for (const auto& b : rule.body) {
                auto lit = ground_literal(b.lit, th);
                if (!lit) {
                    warn("instance body with unevaluable arithmetic was dropped", rule.span);
                    ok = false;
                    break;
                }
                AnnotatedLiteral al;
                al.lit = std::move(*lit);
                al.annotation = ground_annotation(b.annotation, th, rule.span, warnings, false);
                al.naf = b.naf;
                inst.body.push_back(std::move(al));
            }
            if (!ok) continue;
            if (out.gen.empty() || !(out.gen.back() == inst)) out.gen.push_back(std::move(inst));
        }
    }

    // preference rule instances: substitute global variables everywhere;
    // sets keep their local variables
    for (const auto& rule : p.pref) {
        auto positives = positive_body(rule);
        std::vector<Substitution> thetas;
        if (positives.empty()) {
            thetas.push_back({});
        } else {
            Substitution th0;
            enumerate_matches(positives, 0, atoms, th0, tol, budget,
                              [&](const Substitution& th) { thetas.push_back(th); });
            sort_substitutions(thetas);
        }

        std::vector<FuzzyPreferenceRule> instances;
        for (const auto& th : thetas) {
            FuzzyPreferenceRule inst;
            inst.span = rule.span;
            bool ok = true;
            for (const auto& c : rule.head) {
                auto ground = ground_combination(c, th, rule.span, warnings, ok);
                if (!ok) break;
                inst.head.push_back(std::move(ground));
            }
            if (ok) {
                for (const auto& item : rule.body) {
                    if (const auto* lit = std::get_if<AnnotatedLiteral>(&item)) {
                        auto gl = ground_literal(lit->lit, th);
                        if (!gl) {
                            ok = false;
                            break;
                        }
                        AnnotatedLiteral al;
                        al.lit = std::move(*gl);
                        al.annotation =
                            ground_annotation(lit->annotation, th, rule.span, warnings, false);
                        al.naf = lit->naf;
                        inst.body.push_back(std::move(al));
                    } else {
                        AggregateAtom atom = std::get<AggregateAtom>(item);
                        ground_aggregate_parts(atom, th, rule.span, warnings, ok);
                        if (!ok) break;
                        inst.body.push_back(std::move(atom));
                    }
                }
            }
            if (!ok) {
                warn("preference instance with unevaluable arithmetic was dropped", rule.span);
                continue;
            }
            bool dup = false;
            for (const auto& seen : instances)
                if (seen == inst) {
                    dup = true;
                    break;
                }
            if (!dup) instances.push_back(std::move(inst));
        }
        for (auto& inst : instances) out.pref.push_back(std::move(inst));
    }

    return out;
}

// ---- stage two: symbolic set instantiation ---------------------------------

// Expands a symbolic fuzzy set into the ground pairs consistent with the
// generated answer sets: local term variables bind by matching the
// condition literals against an answer set, and local annotation
// variables bind to the grades that answer set assigns those literals.
inline GroundSet instantiate_symbolic_set(const SymbolicSet& set,
                                          const std::vector<FuzzyAnswerSet>& universe,
                                          const Tolerance& tol,
                                          std::vector<Diagnostic>* warnings = nullptr) {
    using namespace ground_detail;
    GroundSet out;

    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(make_warning(msg));
    };

    for (const FuzzyAnswerSet& I : universe) {
        // depth-first match of condition literals against I
        std::vector<Substitution> partial{Substitution{}};
        for (const auto& cond : set.condition) {
            std::vector<Substitution> next;
            for (const auto& [atom, grade] : I.literals()) {
                if (atom.negated != cond.lit.negated || atom.predicate != cond.lit.predicate ||
                    atom.args.size() != cond.lit.args.size())
                    continue;
                for (const auto& base : partial) {
                    Substitution theta = base;
                    if (!match_literal(cond.lit, atom, theta, tol)) continue;
                    // a bare unbound annotation variable binds to the
                    // assigned grade; everything else is checked after the
                    // full match
                    if (cond.annotation.is_variable() && !theta.count(cond.annotation.name))
                        theta.emplace(cond.annotation.name, Term::make_number(grade));
                    next.push_back(std::move(theta));
                }
            }
            partial = std::move(next);
            if (partial.empty()) break;
        }

        for (const auto& theta : partial) {
            // check every condition annotation under the full bindings
            bool holds = true;
            std::vector<AnnotatedLiteral> resolved;
            for (const auto& cond : set.condition) {
                auto lit = ground_literal(cond.lit, theta);
                if (!lit) {
                    holds = false;
                    break;
                }
                auto mu = evaluate_numeric(substitute(cond.annotation, theta));
                auto assigned = I.grade(*lit);
                if (!mu || !assigned || !tol.leq(*mu, *assigned)) {
                    holds = false;
                    break;
                }
                AnnotatedLiteral r;
                r.lit = std::move(*lit);
                r.annotation = Term::make_number(*mu);
                resolved.push_back(std::move(r));
            }
            if (!holds) continue;

            auto value = ground_term(set.value, theta);
            if (!value) {
                warn("set entry with unevaluable arithmetic was dropped");
                continue;
            }
            auto grade = evaluate_numeric(substitute(set.annotation, theta));
            if (!grade) {
                warn("set entry with unevaluable annotation was dropped");
                continue;
            }
            if (*grade < 0.0 || *grade > 1.0) {
                warn("set entry annotation " + number_to_string(*grade) + " clamped into [0,1]");
                grade = Grade::clamped(*grade).value();
            }
            SetEntry entry;
            entry.value = std::move(*value);
            entry.grade = Term::make_number(*grade);
            entry.condition = std::move(resolved);
            out.push_back(std::move(entry));
        }
    }

    std::sort(out.begin(), out.end(),
              [](const SetEntry& a, const SetEntry& b) { return set_entry_compare(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace ground_detail {

inline void instantiate_sets_in_aggregate(FuzzyAggregate& agg,
                                          const std::vector<FuzzyAnswerSet>& universe,
                                          const Tolerance& tol,
                                          std::vector<Diagnostic>* warnings) {
    if (const auto* sym = std::get_if<SymbolicSet>(&agg.set))
        agg.set = instantiate_symbolic_set(*sym, universe, tol, warnings);
}

inline void instantiate_sets_in_combination(Combination& c,
                                            const std::vector<FuzzyAnswerSet>& universe,
                                            const Tolerance& tol,
                                            std::vector<Diagnostic>* warnings) {
    switch (c.kind) {
    case Combination::Kind::Literal: return;
    case Combination::Kind::Aggregate:
        instantiate_sets_in_aggregate(c.agg.aggregate, universe, tol, warnings);
        return;
    case Combination::Kind::Opt:
        instantiate_sets_in_aggregate(c.opt.aggregate, universe, tol, warnings);
        return;
    case Combination::Kind::And:
    case Combination::Kind::Or:
        for (auto& ch : c.children) instantiate_sets_in_combination(ch, universe, tol, warnings);
        return;
    }
}

} // namespace ground_detail

// Completes the ground instantiation of the preference rules once the
// answer sets of the generator program are known.
inline void ground_preference_sets(GroundProgram& gp, const std::vector<FuzzyAnswerSet>& universe,
                                   const Tolerance& tol,
                                   std::vector<Diagnostic>* warnings = nullptr) {
    for (auto& rule : gp.pref) {
        for (auto& c : rule.head)
            ground_detail::instantiate_sets_in_combination(c, universe, tol, warnings);
        for (auto& item : rule.body)
            if (auto* agg = std::get_if<AggregateAtom>(&item))
                ground_detail::instantiate_sets_in_aggregate(agg->aggregate, universe, tol,
                                                             warnings);
    }
}

} // namespace faso
