#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "towercert/errors.hpp"
#include "towercert/field.hpp"
#include "towercert/monomial.hpp"

namespace towercert {

// Ambient polynomial ring K[vars] with a fixed monomial order.  The field
// constant L is part of the coefficient domain and never a ring variable.
struct PolyRing {
    std::vector<std::string> vars;
    FieldSpecPtr spec;
    MonomialOrder order;
    std::map<std::string, std::size_t> index;

    std::size_t var_index(const std::string& name) const {
        auto it = index.find(name);
        if (it == index.end()) throw UnknownVariable("unknown variable: " + name);
        return it->second;
    }
    bool has_var(const std::string& name) const { return index.count(name) != 0; }

    std::string str() const {
        std::string s = "K[";
        for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
        return s + "] " + order.str();
    }
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline bool valid_var_name(const std::string& n) {
    if (n.empty() || n == "L") return false;
    if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_') return false;
    for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

inline RingPtr make_ring(std::vector<std::string> vars, FieldSpecPtr spec,
                         MonomialOrder order = MonomialOrder::grevlex()) {
    auto r = std::make_shared<PolyRing>();
    r->vars = std::move(vars);
    r->spec = std::move(spec);
    r->order = std::move(order);
    r->order.resolve(r->vars);
    for (std::size_t i = 0; i < r->vars.size(); ++i) {
        if (!valid_var_name(r->vars[i]))
            throw ConfigError("invalid variable name: '" + r->vars[i] + "'");
        if (!r->index.emplace(r->vars[i], i).second)
            throw ConfigError("duplicate variable name: '" + r->vars[i] + "'");
    }
    if (!r->spec) throw ConfigError("ring requires a field spec");
    return r;
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->vars == b->vars && a->order == b->order && same_spec(a->spec, b->spec);
}

// Returns `base` if unused in the ring, else base_2, base_3, ...
inline std::string fresh_var_name(const PolyRing& ring, const std::string& base) {
    if (!ring.has_var(base)) return base;
    for (int k = 2;; ++k) {
        std::string cand = base + "_" + std::to_string(k);
        if (!ring.has_var(cand)) return cand;
    }
}

struct Term {
    Monomial mono;
    FieldElem coeff;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(const RingPtr& ring) { return Poly(ring); }

    static Poly constant(const RingPtr& ring, const FieldElem& c) {
        Poly p(ring);
        if (!same_spec(ring->spec, c.spec()))
            throw MixedFieldSpecs("constant from a different field spec");
        if (!c.is_zero()) p.terms_.push_back({Monomial(ring->vars.size(), 0), c});
        return p;
    }
    static Poly constant(const RingPtr& ring, const Rational& c) {
        return constant(ring, FieldElem(ring->spec, c));
    }
    static Poly lambda(const RingPtr& ring) {
        return constant(ring, FieldElem::lambda(ring->spec));
    }
    static Poly variable(const RingPtr& ring, const std::string& name) {
        Monomial m(ring->vars.size(), 0);
        m[ring->var_index(name)] = 1;
        return monomial(ring, m, FieldElem::one(ring->spec));
    }
    static Poly monomial(const RingPtr& ring, Monomial m, const FieldElem& c) {
        if (m.size() != ring->vars.size()) throw ArityMismatch("monomial arity mismatch");
        Poly p(ring);
        if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_is_one(terms_[0].mono));
    }

    const Term& leading_term() const {
        if (is_zero()) throw Error("leading term of zero polynomial");
        return terms_.front();
    }
    const Monomial& leading_monomial() const { return leading_term().mono; }
    const FieldElem& leading_coeff() const { return leading_term().coeff; }

    // Total degree; -1 for the zero polynomial.
    long long degree() const {
        long long d = -1;
        for (const auto& t : terms_) d = std::max(d, (long long)total_degree(t.mono));
        return d;
    }

    long long degree_in(const std::string& var) const {
        std::size_t i = ring_->var_index(var);
        long long d = -1;
        for (const auto& t : terms_) d = std::max(d, (long long)t.mono[i]);
        return d;
    }

    FieldElem coeff_of(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return FieldElem::zero(ring_->spec);
    }

    bool operator==(const Poly& o) const {
        check_ring(o);
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
        return r;
    }

    Poly operator+(const Poly& o) const {
        check_ring(o);
        Poly r(ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        const auto& ord = ring_->order;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = ord.cmp(terms_[i].mono, o.terms_[j].mono);
            if (c > 0) r.terms_.push_back(terms_[i++]);
            else if (c < 0) r.terms_.push_back(o.terms_[j++]);
            else {
                FieldElem s = terms_[i].coeff + o.terms_[j].coeff;
                if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, std::move(s)});
                ++i; ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    // this + c * x^m * g, the reduction workhorse.
    Poly add_scaled(const FieldElem& c, const Monomial& m, const Poly& g) const {
        Poly scaled(ring_);
        scaled.terms_.reserve(g.terms_.size());
        for (const auto& t : g.terms_) {
            FieldElem cc = t.coeff * c;
            if (!cc.is_zero()) scaled.terms_.push_back({mono_mul(t.mono, m), std::move(cc)});
        }
        return *this + scaled;
    }

    Poly operator*(const Poly& o) const {
        check_ring(o);
        struct Desc {
            const MonomialOrder* ord;
            bool operator()(const Monomial& a, const Monomial& b) const { return ord->cmp(a, b) > 0; }
        };
        std::map<Monomial, FieldElem, Desc> acc(Desc{&ring_->order});
        for (const auto& s : terms_)
            for (const auto& t : o.terms_) {
                Monomial m = mono_mul(s.mono, t.mono);
                FieldElem c = s.coeff * t.coeff;
                auto it = acc.find(m);
                if (it == acc.end()) acc.emplace(std::move(m), std::move(c));
                else it->second += c;
            }
        Poly r(ring_);
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }

    Poly operator*(const FieldElem& c) const {
        Poly r(ring_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono, t.coeff * c});
        return r;
    }
    Poly operator*(const Rational& c) const { return *this * FieldElem(ring_->spec, c); }

    Poly pow(unsigned e) const {
        Poly r = constant(ring_, FieldElem::one(ring_->spec));
        Poly b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = (e >>= 1u) ? b * b : b;
        }
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    FieldElem evaluate(const std::vector<FieldElem>& point) const {
        if (point.size() != ring_->vars.size())
            throw ArityMismatch("point arity does not match ring");
        FieldElem acc = FieldElem::zero(ring_->spec);
        for (const auto& t : terms_) {
            FieldElem v = t.coeff;
            for (std::size_t i = 0; i < point.size(); ++i)
                for (std::uint32_t e = 0; e < t.mono[i]; ++e) v *= point[i];
            acc += v;
        }
        return acc;
    }

    // Ring homomorphism K[vars] -> target fixing K, var i -> images[i].
    Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const {
        if (images.size() != ring_->vars.size())
            throw ArityMismatch("substitution needs one image per variable");
        for (const auto& im : images)
            if (!same_ring(im.ring(), target)) throw RingMismatch("image not in target ring");
        if (!same_spec(ring_->spec, target->spec))
            throw MixedFieldSpecs("substitution across field specs");
        Poly acc = Poly::zero(target);
        for (const auto& t : terms_) {
            Poly v = Poly::constant(target, t.coeff);
            for (std::size_t i = 0; i < images.size(); ++i)
                if (t.mono[i]) v = v * images[i].pow(t.mono[i]);
            acc += v;
        }
        return acc;
    }

    // Transport to a ring that contains (a renaming of) this ring's variables.
    Poly transport(const RingPtr& target,
                   const std::map<std::string, std::string>& rename = {}) const {
        if (!same_spec(ring_->spec, target->spec))
            throw MixedFieldSpecs("transport across field specs");
        std::vector<std::size_t> slot(ring_->vars.size());
        for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
            auto it = rename.find(ring_->vars[i]);
            slot[i] = target->var_index(it == rename.end() ? ring_->vars[i] : it->second);
        }
        Poly r(target);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m(target->vars.size(), 0);
            for (std::size_t i = 0; i < slot.size(); ++i) m[slot[i]] += t.mono[i];
            r.terms_.push_back({std::move(m), t.coeff});
        }
        r.resort();
        return r;
    }

    Poly derivative(const std::string& var) const {
        std::size_t i = ring_->var_index(var);
        Poly r(ring_);
        for (const auto& t : terms_) {
            if (!t.mono[i]) continue;
            Monomial m = t.mono;
            FieldElem c = t.coeff * FieldElem(ring_->spec, Rational(m[i]));
            --m[i];
            r.terms_.push_back({std::move(m), std::move(c)});
        }
        r.resort();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading_coeff().inverse();
    }

    // Scale by a positive rational so the rational components of the
    // coefficients become coprime integers.  Keeps Buchberger intermediates
    // small; does not change the ideal generated.
    Poly content_normalized() const {
        if (is_zero()) return *this;
        Integer g = 0, l = 1;
        auto absorb = [&](const Rational& q) {
            if (q == 0) return;
            g = boost::multiprecision::gcd(g, num(q) < 0 ? Integer(-num(q)) : num(q));
            l = boost::multiprecision::lcm(l, den(q));
        };
        for (const auto& t : terms_) {
            absorb(t.coeff.rat_part());
            absorb(t.coeff.lambda_part());
        }
        if (g == 0) g = 1;
        Rational scale(l, g);
        return *this * FieldElem(ring_->spec, scale);
    }

    std::string str() const;

private:
    void check_ring(const Poly& o) const {
        if (!same_ring(ring_, o.ring_)) throw RingMismatch("polynomials from different rings");
    }
    void resort() {
        const auto& ord = ring_->order;
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term& a, const Term& b) { return ord.cmp(a.mono, b.mono) > 0; });
        // merge equal monomials (transport can collide variables)
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().mono == t.mono) merged.back().coeff += t.coeff;
            else merged.push_back(std::move(t));
        }
        terms_.clear();
        for (auto& t : merged)
            if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

inline Poly operator*(const FieldElem& c, const Poly& p) { return p * c; }

// Canonical text form; parse_poly inverts it exactly.
inline std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (!t.mono[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->vars[i];
            if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
        }
        const FieldElem& c = t.coeff;
        bool neg = false;
        std::string piece;
        if (c.is_rational()) {
            Rational a = c.rat_part();
            neg = a < 0;
            Rational mag = neg ? Rational(-a) : a;
            std::string ms = towercert::to_string(mag);
            if (mono.empty()) piece = ms;
            else piece = (mag == 1 ? mono : ms + "*" + mono);
        } else if (c.rat_part() == 0) {
            Rational b = c.lambda_part();
            neg = b < 0;
            Rational mag = neg ? Rational(-b) : b;
            std::string ms = (mag == 1 ? "L" : towercert::to_string(mag) + "*L");
            piece = mono.empty() ? ms : ms + "*" + mono;
        } else {
            piece = "(" + c.str() + ")";
            if (!mono.empty()) piece += "*" + mono;
        }
        if (first) out += (neg ? "-" : "") + piece;
        else out += (neg ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

// f(v) = (v - l1)(v - l2)(v - l3), the defining cubic of the curve y^2 = f(x).
// Squarefree whenever the field parameters are pairwise distinct.
inline Poly build_f(const RingPtr& ring, const std::string& var) {
    Poly v = Poly::variable(ring, var);
    const auto& s = ring->spec;
    Poly r = (v - Poly::constant(ring, s->lambda1)) * (v - Poly::constant(ring, s->lambda2)) *
             (v - Poly::constant(ring, s->lambda3));
    return r;
}

inline bool is_univariate_in(const Poly& p, const std::string& var) {
    std::size_t idx = p.ring()->var_index(var);
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (i != idx && t.mono[i]) return false;
    return true;
}

// Monic gcd in K[var] for polynomials supported on a single variable.
inline Poly univariate_gcd(const Poly& p, const Poly& q, const std::string& var) {
    if (!same_ring(p.ring(), q.ring())) throw RingMismatch("gcd arguments from different rings");
    if (!is_univariate_in(p, var) || !is_univariate_in(q, var))
        throw Error("univariate_gcd: arguments not univariate in " + var);
    const RingPtr& ring = p.ring();
    std::size_t idx = ring->var_index(var);
    auto dense = [&](const Poly& f) {
        std::vector<FieldElem> c(std::size_t(std::max<long long>(f.degree_in(var), 0)) + 1,
                                 FieldElem::zero(ring->spec));
        for (const auto& t : f.terms()) c[t.mono[idx]] = t.coeff;
        return c;
    };
    auto deg = [](const std::vector<FieldElem>& c) {
        for (std::size_t i = c.size(); i-- > 0;)
            if (!c[i].is_zero()) return (long long)i;
        return (long long)-1;
    };
    std::vector<FieldElem> a = dense(p), b = dense(q);
    while (deg(b) >= 0) {
        long long da = deg(a), db = deg(b);
        if (da < db) { std::swap(a, b); continue; }
        FieldElem factor = a[da] / b[db];
        for (long long i = 0; i <= db; ++i) a[da - db + i] -= factor * b[i];
        if (deg(a) < deg(b)) std::swap(a, b);
    }
    long long da = deg(a);
    Poly g = Poly::zero(ring);
    if (da < 0) return g;
    for (long long i = 0; i <= da; ++i) {
        if (a[i].is_zero()) continue;
        Monomial m(ring->vars.size(), 0);
        m[idx] = (std::uint32_t)i;
        g += Poly::monomial(ring, m, a[i]);
    }
    return g.monic();
}

} // namespace towercert
