#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace towercert {

// Dense exponent vector, index-aligned with the owning ring's variable list.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

inline bool mono_is_one(const Monomial& m) {
    for (auto e : m) if (e) return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Does a divide b?
inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

// Total orders on monomials.  Block uses graded reverse lex within each of the
// two blocks and lets the first block [0, split) dominate, which makes it an
// elimination order for the leading variables.  Weighted compares the weighted
// degree first (weights keyed by variable name, default 1, resolved against
// the ring's variable list when the ring is made) and breaks ties by grevlex;
// with positive weights this is again a monomial order.
struct MonomialOrder {
    enum class Kind { Grevlex, Lex, Block, Weighted };
    Kind kind = Kind::Grevlex;
    std::size_t split = 0;
    std::map<std::string, int> weights;
    std::vector<std::int64_t> wvec; // index-aligned resolution of `weights`

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder block(std::size_t split) { return {Kind::Block, split}; }
    static MonomialOrder weighted(std::map<std::string, int> w) {
        MonomialOrder o;
        o.kind = Kind::Weighted;
        o.weights = std::move(w);
        return o;
    }

    // Resolve the name-keyed weights against a concrete variable list.  A
    // weighting that is identically 1 on these variables is plain grevlex, so
    // it demotes; the name map is kept for later rings derived from this one.
    void resolve(const std::vector<std::string>& vars) {
        wvec.clear();
        if (kind != Kind::Weighted) return;
        bool trivial = true;
        wvec.reserve(vars.size());
        for (const auto& v : vars) {
            auto it = weights.find(v);
            int w = it == weights.end() ? 1 : it->second;
            if (w != 1) trivial = false;
            wvec.push_back(w);
        }
        if (trivial) {
            kind = Kind::Grevlex;
            wvec.clear();
        }
    }

    bool operator==(const MonomialOrder& o) const {
        if (kind != o.kind || split != o.split) return false;
        if (kind != Kind::Weighted) return true;
        if (!wvec.empty() && !o.wvec.empty()) return wvec == o.wvec;
        return weights == o.weights;
    }
    bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

    // Three-way compare: positive when a > b.
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::Grevlex: return grevlex_cmp(a, b, 0, a.size());
            case Kind::Lex: return lex_cmp(a, b);
            case Kind::Block: {
                std::size_t s = std::min(split, a.size());
                if (int c = grevlex_cmp(a, b, 0, s)) return c;
                return grevlex_cmp(a, b, s, a.size());
            }
            case Kind::Weighted: {
                std::int64_t da = 0, db = 0;
                for (std::size_t i = 0; i < a.size() && i < wvec.size(); ++i) {
                    da += wvec[i] * a[i];
                    db += wvec[i] * b[i];
                }
                if (da != db) return da < db ? -1 : 1;
                return grevlex_cmp(a, b, 0, a.size());
            }
        }
        return 0;
    }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }

    std::string str() const {
        switch (kind) {
            case Kind::Grevlex: return "grevlex";
            case Kind::Lex: return "lex";
            case Kind::Block: return "block(" + std::to_string(split) + ")";
            case Kind::Weighted: {
                std::string s = "wgrevlex(";
                bool first = true;
                for (const auto& [k, w] : weights) {
                    if (!first) s += ",";
                    s += k + ":" + std::to_string(w);
                    first = false;
                }
                return s + ")";
            }
        }
        return "";
    }

private:
    static int grevlex_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = hi; i-- > lo;) {
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }
    static int lex_cmp(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
};

} // namespace towercert
