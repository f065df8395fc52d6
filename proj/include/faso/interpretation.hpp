#pragma once

#include <map>
#include <optional>

#include "faso/ast.hpp"
#include "faso/grade.hpp"

namespace faso {

// A fuzzy answer set: a partial mapping from ground literals to grades.
// A literal absent from the map is undefined, which is distinct from
// grade 0.  The index is the stable enumeration identity.
class FuzzyAnswerSet {
  public:
    using Map = std::map<Literal, double, LiteralLess>;

    FuzzyAnswerSet() = default;
    explicit FuzzyAnswerSet(int index) : index_(index) {}

    int index() const { return index_; }
    void set_index(int index) { index_ = index; }

    bool defined(const Literal& l) const { return grades_.count(l) != 0; }

    std::optional<double> grade(const Literal& l) const {
        auto it = grades_.find(l);
        if (it == grades_.end()) return std::nullopt;
        return it->second;
    }

    // Re-derivations combine by join (max).  Returns true when the grade
    // increased or the literal became defined.
    bool join_assign(const Literal& l, double g) {
        auto [it, inserted] = grades_.emplace(l, g);
        if (inserted) return true;
        if (g > it->second) {
            it->second = g;
            return true;
        }
        return false;
    }

    const Map& literals() const { return grades_; }
    size_t size() const { return grades_.size(); }

    // No literal and its classical negation may both hold with a positive
    // grade.
    bool consistent(const Tolerance& tol) const {
        for (const auto& [lit, g] : grades_) {
            if (lit.negated || !tol.gt(g, 0.0)) continue;
            auto other = grade(complement(lit));
            if (other && tol.gt(*other, 0.0)) return false;
        }
        return true;
    }

    bool equals(const FuzzyAnswerSet& other, const Tolerance& tol) const {
        if (grades_.size() != other.grades_.size()) return false;
        auto it = other.grades_.begin();
        for (const auto& [lit, g] : grades_) {
            if (!(lit == it->first) || !tol.eq(g, it->second)) return false;
            ++it;
        }
        return true;
    }

  private:
    int index_ = 0;
    Map grades_;
};

} // namespace faso
