#include "pnf/cohomology.hpp"

#include <map>

#include "pnf/enumerate.hpp"
#include "pnf/matrix.hpp"

namespace pnf {

namespace {

[[noreturn]] void not_hamiltonian(int degree, const std::string& detail) {
    throw DomainError("not-hamiltonian",
                      "no Hamiltonian exists for the given field: " + detail,
                      {{"degree", std::to_string(degree)}});
}

// Primitive of the symplectic part: f with -df/dy_j = Y(x_j), df/dx_j = Y(y_j),
// by the radial homotopy in the (x,y) variables (z enters as a parameter).
Poly symplectic_primitive(const MultiVec& Y, const ProblemSpace& space, int N) {
    int n = space.n(), l = space.l;
    Poly f(n);
    for (int j = 0; j < l; ++j) {
        Poly a = truncate(Y.component({j}), N - 1);      // along d/dx_j
        Poly b = truncate(Y.component({l + j}), N - 1);  // along d/dy_j
        for (const auto& [m, c] : b.terms()) {
            Monomial t = m;
            t.e[static_cast<size_t>(j)] += 1;  // times x_j
            int k = bidegree_of(t, l).first;
            f.add_term(t, c / Scalar(k));
        }
        for (const auto& [m, c] : a.terms()) {
            Monomial t = m;
            t.e[static_cast<size_t>(l + j)] += 1;  // times y_j
            int k = bidegree_of(t, l).first;
            f.add_term(t, -(c / Scalar(k)));
        }
    }
    return truncate(f, N);
}

using WeightKey = std::vector<Scalar>;

WeightKey monomial_weight(const Monomial& m, const LieAlgebraData& alg) {
    WeightKey w(static_cast<size_t>(alg.cartan_dim()));
    for (int i = 0; i < alg.dim; ++i) {
        uint32_t e = m.e[static_cast<size_t>(i)];
        if (e == 0) continue;
        for (size_t t = 0; t < w.size(); ++t)
            w[t] += alg.weights[static_cast<size_t>(i)][t] * Scalar(static_cast<long>(e));
    }
    return w;
}

// Per-degree solve of {h, z_i} = Y_i on the pure Lie-Poisson block. The
// linear map kappa -> X_{z^kappa} preserves the root weight, so the system
// splits into small blocks indexed by the weight of the unknown monomial.
Poly lie_poisson_solve_degree(const std::vector<Poly>& rhs, const LieAlgebraData& alg, int r) {
    int m = alg.dim;
    struct Block {
        std::map<Monomial, int, GrlexLess> unknowns;
        std::map<std::pair<int, Monomial>, int,
                 bool (*)(const std::pair<int, Monomial>&, const std::pair<int, Monomial>&)>
            rows;
        std::vector<std::tuple<int, int, Scalar>> entries;  // (row, col, coeff)
        std::vector<Scalar> rhs;

        Block()
            : rows([](const std::pair<int, Monomial>& a, const std::pair<int, Monomial>& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return grlex_cmp(a.second, b.second) < 0;
              }) {}
    };
    std::map<WeightKey, Block> blocks;

    // Columns: every monomial kappa of degree r, grouped by weight; indices
    // follow graded-lex order so free variables of the solve are dropped in a
    // fixed, minimal-support fashion.
    enumerate_degree(m, r, [&](const Monomial& kappa) {
        blocks[monomial_weight(kappa, alg)].unknowns.emplace(kappa, 0);
    });
    for (auto& [w, blk] : blocks) {
        int col = 0;
        for (auto& [kappa, idx] : blk.unknowns) idx = col++;
    }
    for (auto& [w, blk] : blocks) {
        for (const auto& [kappa, col] : blk.unknowns) {
            for (int a = 0; a < m; ++a) {
                uint32_t ea = kappa.e[static_cast<size_t>(a)];
                if (ea == 0) continue;
                for (int i = 0; i < m; ++i)
                    for (int k = 0; k < m; ++k) {
                        const Scalar& cik = alg.cst(a, i, k);
                        if (cik.is_zero()) continue;
                        Monomial mu = kappa;
                        mu.e[static_cast<size_t>(a)] -= 1;
                        mu.e[static_cast<size_t>(k)] += 1;
                        auto key = std::make_pair(i, mu);
                        auto [it, inserted] =
                            blk.rows.emplace(key, static_cast<int>(blk.rows.size()));
                        blk.entries.emplace_back(it->second, col,
                                                 cik * Scalar(static_cast<long>(ea)));
                    }
            }
        }
        blk.rhs.assign(blk.rows.size(), Scalar());
    }

    // Right-hand sides: component i, monomial mu belongs to the block of
    // weight(mu) - alpha_i. A term with no matching row is unreachable.
    for (int i = 0; i < m; ++i) {
        for (const auto& [mu, v] : rhs[static_cast<size_t>(i)].terms()) {
            WeightKey w = monomial_weight(mu, alg);
            for (size_t t = 0; t < w.size(); ++t)
                w[t] -= alg.weights[static_cast<size_t>(i)][t];
            auto bit = blocks.find(w);
            if (bit == blocks.end())
                not_hamiltonian(r, "component " + std::to_string(i + 1) +
                                       " has a term outside the reachable weight classes");
            Block& blk = bit->second;
            auto rit = blk.rows.find(std::make_pair(i, mu));
            if (rit == blk.rows.end())
                not_hamiltonian(r, "component " + std::to_string(i + 1) +
                                       " has an unreachable term");
            blk.rhs[static_cast<size_t>(rit->second)] = v;
        }
    }

    Poly h(m);
    for (auto& [w, blk] : blocks) {
        bool rhs_zero = true;
        for (const Scalar& s : blk.rhs)
            if (!s.is_zero()) {
                rhs_zero = false;
                break;
            }
        if (rhs_zero) continue;
        Mat A(static_cast<int>(blk.rows.size()), static_cast<int>(blk.unknowns.size()));
        for (const auto& [row, col, coeff] : blk.entries) A.at(row, col) += coeff;
        std::vector<Scalar> sol;
        if (!solve_linear(A, blk.rhs, sol)) not_hamiltonian(r, "inconsistent linear system");
        for (const auto& [kappa, col] : blk.unknowns)
            h.add_term(kappa, sol[static_cast<size_t>(col)]);
    }
    return h;
}

}  // namespace

Poly recover_hamiltonian(const MultiVec& Y, const ProblemSpace& space, int N) {
    if (Y.grade() != 1) throw InputError("bad-grade", "expected a vector field");
    if (Y.nvars() != space.n())
        throw InputError("dimension-mismatch", "field does not live on the problem space");
    int n = space.n(), l = space.l, m = space.m();
    MultiVec pi = product_poisson(space);

    Poly h(n);
    MultiVec residual = Y.truncated(N);
    if (l > 0) {
        h = symplectic_primitive(residual, space, N);
        residual = residual - hamiltonian_vf(h, pi, N);
        // After removing the symplectic primitive the remainder must be a
        // z-directed field with z-only coefficients.
        for (const auto& [idx, p] : residual.components()) {
            if (idx[0] < 2 * l)
                not_hamiltonian(p.min_degree(),
                                "symplectic components are not derived from a Hamiltonian");
            for (const auto& [mono, c] : p.terms())
                if (bidegree_of(mono, l).first != 0)
                    not_hamiltonian(mono.degree(),
                                    "transverse components depend on the symplectic block");
        }
    }

    // Pure Lie-Poisson solve on the z-block, degree by degree.
    if (m > 0 && !residual.is_zero()) {
        std::vector<Poly> zcomp(static_cast<size_t>(m), Poly(m));
        for (const auto& [idx, p] : residual.components()) {
            Poly& target = zcomp[static_cast<size_t>(idx[0] - 2 * l)];
            for (const auto& [mono, c] : p.terms()) {
                Monomial zm(m);
                for (int i = 0; i < m; ++i) zm.e[static_cast<size_t>(i)] = mono.e[static_cast<size_t>(2 * l + i)];
                target.add_term(zm, c);
            }
        }
        int max_r = 0;
        for (const Poly& p : zcomp) max_r = std::max(max_r, p.degree());
        for (int r = 0; r <= std::min(max_r, N); ++r) {
            std::vector<Poly> rhs_r(static_cast<size_t>(m));
            bool any = false;
            for (int i = 0; i < m; ++i) {
                rhs_r[static_cast<size_t>(i)] = graded_component(zcomp[static_cast<size_t>(i)], r);
                any = any || !rhs_r[static_cast<size_t>(i)].is_zero();
            }
            if (!any) continue;
            if (r == 0)
                not_hamiltonian(0, "constant transverse components cannot be Hamiltonian");
            Poly hz = lie_poisson_solve_degree(rhs_r, space.algebra, r);
            // Lift from the z-block back to the ambient space.
            for (const auto& [zm, c] : hz.terms()) {
                Monomial mono(n);
                for (int i = 0; i < m; ++i) mono.e[static_cast<size_t>(2 * l + i)] = zm.e[static_cast<size_t>(i)];
                h.add_term(mono, c);
            }
        }
    }

    h = truncate(h, N);
    // The construction is verified end to end; a mismatch means the input was
    // not a Poisson vector field in a way the earlier checks missed.
    MultiVec check = hamiltonian_vf(h, pi, N);
    if (check != Y.truncated(N)) not_hamiltonian(N, "verification of the recovered Hamiltonian failed");
    return h;
}

}  // namespace pnf
