#pragma once

#include <memory>
#include <optional>
#include <string>

#include "towercert/errors.hpp"
#include "towercert/rational.hpp"

namespace towercert {

// The coefficient field K = Q(L) with L^2 = disc = -l1*l2*l3 for nonzero,
// pairwise distinct rational parameters l1, l2, l3.  When disc happens to be
// a rational square, K collapses to Q and L denotes the positive square root.
struct FieldSpec {
    Rational lambda1, lambda2, lambda3;
    Rational disc;
    bool is_square = false;
    std::optional<Rational> sqrt_disc;

    bool operator==(const FieldSpec& o) const {
        return lambda1 == o.lambda1 && lambda2 == o.lambda2 && lambda3 == o.lambda3;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const {
        return "Q(L), L^2 = " + towercert::to_string(disc) +
               (is_square ? " (square, K = Q)" : "");
    }
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

// Internal: no validation.  Used by make_field and by deliberate
// fault-injection paths that need a degenerate parameter set.
inline FieldSpecPtr make_field_unchecked(const Rational& l1, const Rational& l2,
                                         const Rational& l3) {
    auto s = std::make_shared<FieldSpec>();
    s->lambda1 = l1;
    s->lambda2 = l2;
    s->lambda3 = l3;
    s->disc = -l1 * l2 * l3;
    if (auto r = rational_sqrt_exact(s->disc)) {
        s->is_square = true;
        s->sqrt_disc = *r;
    }
    return s;
}

inline FieldSpecPtr make_field(const Rational& l1, const Rational& l2, const Rational& l3) {
    if (l1 == 0 || l2 == 0 || l3 == 0)
        throw DegenerateParameters("field parameters must be nonzero");
    if (l1 == l2 || l1 == l3 || l2 == l3)
        throw DegenerateParameters("field parameters must be pairwise distinct");
    return make_field_unchecked(l1, l2, l3);
}

inline bool same_spec(const FieldSpecPtr& a, const FieldSpecPtr& b) {
    return a == b || (a && b && *a == *b);
}

// An element a + b*L of K.  In the square-disc case b is folded into a at
// construction time, so b == 0 is an invariant there.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldSpecPtr spec, Rational a, Rational b = 0) : spec_(std::move(spec)), a_(std::move(a)), b_(std::move(b)) {
        normalize();
    }

    static FieldElem zero(const FieldSpecPtr& s) { return FieldElem(s, 0, 0); }
    static FieldElem one(const FieldSpecPtr& s) { return FieldElem(s, 1, 0); }
    static FieldElem lambda(const FieldSpecPtr& s) { return FieldElem(s, 0, 1); }

    const FieldSpecPtr& spec() const { return spec_; }
    const Rational& rat_part() const { return a_; }
    const Rational& lambda_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    bool operator==(const FieldElem& o) const {
        check_specs(o);
        return a_ == o.a_ && b_ == o.b_;
    }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem operator-() const { return FieldElem(spec_, -a_, -b_); }

    FieldElem operator+(const FieldElem& o) const {
        check_specs(o);
        return FieldElem(spec_, a_ + o.a_, b_ + o.b_);
    }
    FieldElem operator-(const FieldElem& o) const {
        check_specs(o);
        return FieldElem(spec_, a_ - o.a_, b_ - o.b_);
    }
    FieldElem operator*(const FieldElem& o) const {
        check_specs(o);
        return FieldElem(spec_, a_ * o.a_ + b_ * o.b_ * spec_->disc, a_ * o.b_ + b_ * o.a_);
    }

    // Norm a^2 - b^2*disc; multiplicative, zero only on zero.
    Rational norm() const { return a_ * a_ - b_ * b_ * spec_->disc; }

    FieldElem inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero field element");
        Rational n = norm();
        // disc is a non-square when b can be nonzero, so the norm of a
        // nonzero element never vanishes.
        return FieldElem(spec_, a_ / n, -b_ / n);
    }

    FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    std::string str() const {
        if (b_ == 0) return towercert::to_string(a_);
        std::string lt = lambda_term();
        if (a_ == 0) return lt;
        return towercert::to_string(a_) + (b_ > 0 ? "+" : "") + lt;
    }

private:
    void normalize() {
        if (b_ != 0 && spec_ && spec_->is_square) {
            a_ += b_ * *spec_->sqrt_disc;
            b_ = 0;
        }
    }
    std::string lambda_term() const {
        if (b_ == 1) return "L";
        if (b_ == -1) return "-L";
        return towercert::to_string(b_) + "*L";
    }
    void check_specs(const FieldElem& o) const {
        if (!same_spec(spec_, o.spec_))
            throw MixedFieldSpecs("field elements from different field specs");
    }

    FieldSpecPtr spec_;
    Rational a_ = 0, b_ = 0;
};

} // namespace towercert
