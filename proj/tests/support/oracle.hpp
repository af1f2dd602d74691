#pragma once

// Independent ideal-membership decision used to cross-check the Groebner
// engine.  p lies in <g_1, ..., g_k> with cofactors of degree <= d exactly
// when p is a K-linear combination of the products m * g_i over monomials m
// of degree <= d.  That is a finite linear system over the monomial basis,
// decided here by exact row echelon -- no S-pairs, no divisibility-driven
// reduction, nothing shared with the engine under test beyond raw arithmetic.

#include <functional>
#include <map>
#include <vector>

#include "towercert/poly.hpp"

namespace towercert::testsupport {

inline void monomials_up_to(std::size_t nvars, std::uint32_t maxdeg,
                            std::vector<Monomial>& out) {
    Monomial cur(nvars, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                              std::uint32_t left) {
        if (i == nvars) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, maxdeg);
}

// Row echelon basis of a K-linear span of polynomials.  Rows are monic with
// pairwise distinct leading monomials, so a combination of rows always leads
// with one of the row leads: eliminating leads either reaches zero (member)
// or gets stuck on a monomial no row can produce (not a member).
class LinearSpan {
public:
    explicit LinearSpan(RingPtr ring)
        : ring_(std::move(ring)), rows_(MonoGreater{&ring_->order}) {}

    void insert(Poly p) {
        p = eliminate(std::move(p));
        if (!p.is_zero()) rows_.emplace(p.leading_monomial(), p.monic());
    }

    bool contains(Poly p) const { return eliminate(std::move(p)).is_zero(); }

private:
    struct MonoGreater {
        const MonomialOrder* ord;
        bool operator()(const Monomial& a, const Monomial& b) const {
            return ord->greater(a, b);
        }
    };

    Poly eliminate(Poly p) const {
        while (!p.is_zero()) {
            auto it = rows_.find(p.leading_monomial());
            if (it == rows_.end()) break;
            p = p.add_scaled(-p.leading_coeff(), Monomial(p.leading_monomial().size(), 0),
                             it->second);
        }
        return p;
    }

    RingPtr ring_;
    std::map<Monomial, Poly, MonoGreater> rows_;
};

// Does p lie in the ideal generated by gens with cofactor degrees <= maxdeg?
inline bool oracle_member(const Poly& p, const std::vector<Poly>& gens,
                          std::uint32_t maxdeg) {
    if (p.is_zero()) return true;
    if (gens.empty()) return false;
    const RingPtr& ring = p.ring();
    std::vector<Monomial> monos;
    monomials_up_to(ring->vars.size(), maxdeg, monos);
    LinearSpan span(ring);
    for (const auto& g : gens)
        for (const auto& m : monos)
            span.insert(Poly::monomial(ring, m, FieldElem::one(ring->spec)) * g);
    return span.contains(p);
}

} // namespace towercert::testsupport
