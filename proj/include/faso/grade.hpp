#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace faso {

// Membership grades form the complete lattice ([0,1], <=) with
// join = max and meet = min.  Construction rejects values outside the
// lattice; use Grade::clamped where the caller's policy is to clamp.
class Grade {
  public:
    Grade() = default;
    explicit Grade(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0))
            throw std::domain_error("grade outside [0,1]");
    }

    static Grade clamped(double value) {
        return Grade(std::clamp(value, 0.0, 1.0), unchecked_tag{});
    }

    double value() const { return value_; }

    friend Grade join(Grade a, Grade b) {
        return Grade(std::max(a.value_, b.value_), unchecked_tag{});
    }
    friend Grade meet(Grade a, Grade b) {
        return Grade(std::min(a.value_, b.value_), unchecked_tag{});
    }
    friend bool operator==(Grade a, Grade b) { return a.value_ == b.value_; }

  private:
    struct unchecked_tag {};
    Grade(double value, unchecked_tag) : value_(value) {}

    double value_ = 0.0;
};

enum class Rel { Eq, Ne, Lt, Gt, Le, Ge };

inline const char* rel_text(Rel r) {
    switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
    }
    return "";
}

// Absolute tolerance shared by every grade and numeric guard comparison.
// "a < b" means a is below b by more than eps.
struct Tolerance {
    double eps = 1e-9;

    bool eq(double a, double b) const { return std::fabs(a - b) <= eps; }
    bool ne(double a, double b) const { return !eq(a, b); }
    bool leq(double a, double b) const { return a <= b + eps; }
    bool geq(double a, double b) const { return b <= a + eps; }
    bool lt(double a, double b) const { return a < b - eps; }
    bool gt(double a, double b) const { return b < a - eps; }

    bool compare(double a, Rel r, double b) const {
        switch (r) {
        case Rel::Eq: return eq(a, b);
        case Rel::Ne: return ne(a, b);
        case Rel::Lt: return lt(a, b);
        case Rel::Gt: return gt(a, b);
        case Rel::Le: return leq(a, b);
        case Rel::Ge: return geq(a, b);
        }
        return false;
    }
};

} // namespace faso
