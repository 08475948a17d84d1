#pragma once

#include <functional>

#include "pnf/monomial.hpp"

namespace pnf {

// Calls fn for every exponent vector of total degree exactly `degree`,
// in lexicographic order of the exponents (first coordinate outermost).
inline void enumerate_degree(int nvars, int degree,
                             const std::function<void(const Monomial&)>& fn) {
    Monomial m(nvars);
    if (nvars == 0) {
        if (degree == 0) fn(m);
        return;
    }
    std::function<void(int, int)> rec = [&](int pos, int budget) {
        if (pos == nvars - 1) {
            m.e[static_cast<size_t>(pos)] = static_cast<uint32_t>(budget);
            fn(m);
            m.e[static_cast<size_t>(pos)] = 0;
            return;
        }
        for (int v = budget; v >= 0; --v) {
            m.e[static_cast<size_t>(pos)] = static_cast<uint32_t>(v);
            rec(pos + 1, budget - v);
        }
        m.e[static_cast<size_t>(pos)] = 0;
    };
    rec(0, degree);
}

}  // namespace pnf
