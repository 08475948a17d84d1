#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace pnf {

// Exponent vector of a monomial; the total degree is always derived.
struct Monomial {
    std::vector<uint32_t> e;

    Monomial() = default;
    explicit Monomial(int nvars) : e(static_cast<size_t>(nvars), 0) {}
    explicit Monomial(std::vector<uint32_t> exps) : e(std::move(exps)) {}

    int nvars() const { return static_cast<int>(e.size()); }
    int degree() const { return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)); }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (size_t k = 0; k < r.e.size(); ++k) r.e[k] += b.e[k];
        return r;
    }
};

// Graded lexicographic comparison: first by total degree, then lex on the
// exponent vector (earlier coordinates weigh more). Returns -1, 0, or 1.
inline int grlex_cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (size_t k = 0; k < a.e.size(); ++k) {
        if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? -1 : 1;
    }
    return 0;
}

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) < 0; }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        size_t h = 1469598103934665603ull;
        for (uint32_t v : m.e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace pnf
