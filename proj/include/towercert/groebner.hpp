#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "towercert/poly.hpp"

namespace towercert {

// Global default for the reduction-step budget; every Buchberger run and
// normal-form computation draws from a fresh counter of this size unless the
// caller passes an explicit budget.  TOWERCERT_BUDGET overrides the default.
inline std::atomic<long long>& budget_default() {
    static std::atomic<long long> v{[] {
        if (const char* e = std::getenv("TOWERCERT_BUDGET")) {
            char* end = nullptr;
            long long b = std::strtoll(e, &end, 10);
            if (end && *end == '\0' && b > 0) return b;
        }
        return 1000000LL;
    }()};
    return v;
}
inline void set_default_budget(long long b) { budget_default().store(b); }

struct BudgetCounter {
    long long remaining;
    explicit BudgetCounter(std::optional<long long> b = {})
        : remaining(b.value_or(budget_default().load())) {}
    void spend() {
        if (--remaining < 0) throw BudgetExceeded("reduction budget exhausted");
    }
};

namespace detail {

// Full normal form of p against basis: no term of the result is divisible by
// any basis leading monomial.  Deterministic (first reducer in basis order).
inline Poly reduce_full(Poly p, const std::vector<Poly>& basis, BudgetCounter& budget) {
    Poly out = Poly::zero(p.ring());
    while (!p.is_zero()) {
        const Monomial& lm = p.leading_monomial();
        const Poly* reducer = nullptr;
        for (const auto& g : basis) {
            if (!g.is_zero() && mono_divides(g.leading_monomial(), lm)) { reducer = &g; break; }
        }
        if (reducer) {
            budget.spend();
            FieldElem c = -(p.leading_coeff() / reducer->leading_coeff());
            p = p.add_scaled(c, mono_div(lm, reducer->leading_monomial()), *reducer);
        } else {
            out += Poly::monomial(p.ring(), lm, p.leading_coeff());
            p = p.add_scaled(-FieldElem::one(p.ring()->spec), Monomial(lm.size(), 0),
                             Poly::monomial(p.ring(), lm, p.leading_coeff()));
        }
    }
    return out;
}

inline Poly s_poly(const Poly& f, const Poly& g) {
    Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
    Poly a = Poly::zero(f.ring()).add_scaled(f.leading_coeff().inverse(),
                                             mono_div(l, f.leading_monomial()), f);
    Poly b = Poly::zero(g.ring()).add_scaled(g.leading_coeff().inverse(),
                                             mono_div(l, g.leading_monomial()), g);
    return a - b;
}

// Buchberger with the product and chain criteria and the normal selection
// strategy (lowest lcm degree first, ties by the monomial order on lcms).
// Returns the unique reduced basis: monic, pairwise irreducible, sorted with
// leading monomials descending.
inline std::vector<Poly> buchberger_core(const RingPtr& ring, const std::vector<Poly>& gens,
                                         BudgetCounter& budget) {
    auto unit_basis = [&] {
        return std::vector<Poly>{Poly::constant(ring, FieldElem::one(ring->spec))};
    };
    std::vector<Poly> G;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.is_constant()) return unit_basis();
        G.push_back(g.content_normalized().monic());
    }

    // Pre-solve: Gaussian elimination of affine-linear generators.  A monic
    // generator v + t with every monomial of degree <= 1 rewrites v := -t;
    // substituting it into the rest shrinks the effective variable count
    // before any S-pairs are formed.  The solved relations rejoin the basis
    // afterwards: their leading monomials are distinct single variables absent
    // from everything else, so all their S-pairs die to the product criterion
    // and the union is still a basis of the same ideal.
    auto affine_linear = [](const Poly& p) {
        for (const auto& t : p.terms())
            if (total_degree(t.mono) > 1) return false;
        return true;
    };
    std::vector<Poly> solved;
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (!affine_linear(G[i])) continue;
            Poly rel = G[i];
            G.erase(G.begin() + (std::ptrdiff_t)i);
            std::size_t v = 0;
            while (rel.leading_monomial()[v] == 0) ++v;
            std::vector<Poly> images;
            images.reserve(ring->vars.size());
            for (std::size_t k = 0; k < ring->vars.size(); ++k)
                images.push_back(Poly::variable(ring, ring->vars[k]));
            images[v] = Poly::variable(ring, ring->vars[v]) - rel;
            auto apply = [&](Poly& p) {
                budget.spend();
                p = p.substitute(ring, images);
            };
            for (auto& s : solved) apply(s);
            solved.push_back(rel);
            std::vector<Poly> next;
            next.reserve(G.size());
            for (auto& g : G) {
                apply(g);
                if (g.is_zero()) continue;
                if (g.is_constant()) return unit_basis();
                next.push_back(g.content_normalized().monic());
            }
            G = std::move(next);
            again = true;
            break;
        }
    }

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::uint64_t deg;
    };
    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> pending_keys;
    auto push_pair = [&](std::size_t i, std::size_t j) {
        Monomial l = mono_lcm(G[i].leading_monomial(), G[j].leading_monomial());
        pending.push_back({i, j, l, total_degree(l)});
        pending_keys.insert({i, j});
    };
    for (std::size_t j = 1; j < G.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) push_pair(i, j);

    const MonomialOrder& ord = ring->order;
    while (!pending.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            const Pair &a = pending[k], &b = pending[best];
            if (a.deg < b.deg ||
                (a.deg == b.deg && (ord.less(a.lcm, b.lcm) ||
                                    (a.lcm == b.lcm && std::tie(a.i, a.j) < std::tie(b.i, b.j)))))
                best = k;
        }
        Pair pr = pending[best];
        pending.erase(pending.begin() + (std::ptrdiff_t)best);
        pending_keys.erase({pr.i, pr.j});

        if (mono_coprime(G[pr.i].leading_monomial(), G[pr.j].leading_monomial())) continue;
        bool chained = false;
        for (std::size_t k = 0; k < G.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(G[k].leading_monomial(), pr.lcm)) continue;
            auto key = [&](std::size_t a, std::size_t b) {
                return std::pair<std::size_t, std::size_t>{std::min(a, b), std::max(a, b)};
            };
            if (!pending_keys.count(key(pr.i, k)) && !pending_keys.count(key(pr.j, k)))
                chained = true;
        }
        if (chained) continue;

        Poly r = reduce_full(s_poly(G[pr.i], G[pr.j]), G, budget);
        if (r.is_zero()) continue;
        if (r.is_constant()) return unit_basis();
        G.push_back(r.content_normalized().monic());
        for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
    }

    for (auto& s : solved) G.push_back(std::move(s));

    // minimize: drop elements whose leading monomial another one divides
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial &mi = G[i].leading_monomial(), &mj = G[j].leading_monomial();
            if (mono_divides(mj, mi) && (mi != mj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    // tail-reduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly r = reduce_full(minimal[i], others, budget).monic();
            if (r != minimal[i]) {
                minimal[i] = r;
                changed = true;
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return ord.cmp(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return minimal;
}

} // namespace detail

// Finitely generated ideal of its ambient ring.  The reduced Groebner basis
// for the ring's own order is computed once and cached behind a lock; copies
// of the Ideal share the cache.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Poly> gens)
        : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens) {
            if (!same_ring(g.ring(), ring_)) throw RingMismatch("generator not in the ideal's ring");
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }
    static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }

    const std::vector<Poly>& groebner(std::optional<long long> budget = {}) const {
        std::lock_guard<std::mutex> lock(cache_->m);
        if (!cache_->ready) {
            BudgetCounter counter(budget);
            cache_->basis = detail::buchberger_core(ring_, gens_, counter);
            cache_->ready = true;
        }
        return cache_->basis;
    }

private:
    struct Cache {
        std::mutex m;
        bool ready = false;
        std::vector<Poly> basis;
    };
    RingPtr ring_;
    std::vector<Poly> gens_;
    std::shared_ptr<Cache> cache_;
};

// Reduced basis under an arbitrary order (the ideal's ring order is the cached
// fast path).  The result lives in a ring that carries the requested order.
inline std::vector<Poly> buchberger(const Ideal& I, const MonomialOrder& order,
                                    std::optional<long long> budget = {}) {
    if (order == I.ring()->order) return I.groebner(budget);
    RingPtr r2 = make_ring(I.ring()->vars, I.ring()->spec, order);
    std::vector<Poly> gens;
    gens.reserve(I.gens().size());
    for (const auto& g : I.gens()) gens.push_back(g.transport(r2));
    BudgetCounter counter(budget);
    return detail::buchberger_core(r2, gens, counter);
}

inline Poly normal_form(const Poly& p, const Ideal& I, std::optional<long long> budget = {}) {
    if (!same_ring(p.ring(), I.ring())) throw RingMismatch("normal form across rings");
    const auto& basis = I.groebner(budget);
    BudgetCounter counter(budget);
    return detail::reduce_full(p, basis, counter);
}

inline bool ideal_member(const Poly& p, const Ideal& I, std::optional<long long> budget = {}) {
    return normal_form(p, I, budget).is_zero();
}

inline bool is_unit_ideal(const Ideal& I, std::optional<long long> budget = {}) {
    const auto& basis = I.groebner(budget);
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

inline bool ideal_equal(const Ideal& I, const Ideal& J, std::optional<long long> budget = {}) {
    if (!same_ring(I.ring(), J.ring())) throw RingMismatch("ideal comparison across rings");
    for (const auto& g : I.gens())
        if (!ideal_member(g, J, budget)) return false;
    for (const auto& g : J.gens())
        if (!ideal_member(g, I, budget)) return false;
    return true;
}

// p vanishes on V(I) over the algebraic closure, decided by the trick of
// inverting p with a fresh variable: 1 in I + <1 - u*p>  iff  p in sqrt(I).
inline bool radical_member(const Poly& p, const Ideal& I, std::optional<long long> budget = {}) {
    if (!same_ring(p.ring(), I.ring())) throw RingMismatch("radical membership across rings");
    if (p.is_zero()) return true;
    const RingPtr& ring = I.ring();
    std::vector<std::string> vars = ring->vars;
    std::string u = fresh_var_name(*ring, "u");
    vars.push_back(u);
    RingPtr ext = make_ring(vars, ring->spec, ring->order);
    std::vector<Poly> gens;
    gens.reserve(I.gens().size() + 1);
    for (const auto& g : I.gens()) gens.push_back(g.transport(ext));
    gens.push_back(Poly::constant(ext, Rational(1)) -
                   Poly::variable(ext, u) * p.transport(ext));
    return is_unit_ideal(Ideal(ext, std::move(gens)), budget);
}

} // namespace towercert
