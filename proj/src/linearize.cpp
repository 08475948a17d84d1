#include "pnf/linearize.hpp"

#include <sstream>

#include "pnf/enumerate.hpp"

namespace pnf {

Scalar theta_eigenvalue(const Monomial& lambda, const std::vector<Scalar>& weights, int r) {
    if (lambda.nvars() != static_cast<int>(weights.size()))
        throw InputError("dimension-mismatch", "one weight per coordinate required");
    if (lambda.degree() != r)
        throw InputError("bad-degree", "|lambda| must equal the operator degree r");
    Scalar v(static_cast<long>(r - 1));
    for (size_t i = 0; i < weights.size(); ++i) {
        uint32_t e = lambda.e[i];
        if (e != 0) v += weights[i] * Scalar(static_cast<long>(e));
    }
    return v;
}

NonresonanceReport check_nonresonance(const std::vector<Scalar>& weights, int N) {
    NonresonanceReport report;
    int n = static_cast<int>(weights.size());
    for (int r = 2; r <= N; ++r) {
        enumerate_degree(n, r, [&](const Monomial& lambda) {
            ++report.scanned;
            if (theta_eigenvalue(lambda, weights, r).is_zero())
                report.resonances.push_back({r, lambda});
        });
    }
    report.nonresonant = report.resonances.empty();
    return report;
}

namespace {

std::string monomial_str(const Monomial& m, const VarNames& names) {
    return Poly::monomial(m.nvars(), m, Scalar(1)).str(names);
}

std::vector<DivisorLogEntry> build_divisor_log(const std::vector<Scalar>& weights, int N) {
    std::vector<DivisorLogEntry> log;
    int n = static_cast<int>(weights.size());
    for (int r = 2; r <= N; ++r) {
        DivisorLogEntry entry;
        entry.degree = r;
        bool have = false;
        Rational best;
        enumerate_degree(n, r, [&](const Monomial& lambda) {
            Scalar v = theta_eigenvalue(lambda, weights, r);
            Rational a2 = v.abs2();
            if (!have || a2 < best) {
                have = true;
                best = a2;
                entry.argmin = lambda;
                entry.value = v;
            }
        });
        if (have) log.push_back(std::move(entry));
    }
    return log;
}

// Solves Theta_u(G) = H blockwise on each homogeneous piece (diagonal on
// monomials); nonresonance has been established, so every division is by a
// nonzero exact eigenvalue.
Poly invert_theta(const Poly& H, const std::vector<Scalar>& weights, const VarNames& names) {
    Poly G(H.nvars());
    for (const auto& [m, c] : H.terms()) {
        Scalar ev = theta_eigenvalue(m, weights, m.degree());
        if (ev.is_zero())
            throw DomainError("resonance", "vanishing Theta eigenvalue during the solve",
                              {{"degree", std::to_string(m.degree())},
                               {"monomial", monomial_str(m, names)}});
        G.add_term(m, c / ev);
    }
    return G;
}

std::vector<std::pair<int, int>> make_blocks(Schedule schedule, int N) {
    std::vector<std::pair<int, int>> blocks;
    if (schedule == Schedule::DegreeByDegree) {
        for (int r = 2; r <= N; ++r) blocks.emplace_back(r, r);
    } else {
        // degrees [2,2], [3,4], [5,8], ... : block d kills 2^d+1 .. 2^{d+1}.
        for (int d = 0; (1 << d) + 1 <= N; ++d)
            blocks.emplace_back((1 << d) + 1 > 2 ? (1 << d) + 1 : 2,
                                std::min(N, 1 << (d + 1)));
    }
    return blocks;
}

std::vector<DegreeResidual> residual_table(const MultiVec& residual, int N) {
    std::vector<DegreeResidual> table(static_cast<size_t>(N), DegreeResidual{});
    for (int r = 1; r <= N; ++r) table[static_cast<size_t>(r - 1)].degree = r;
    for (const auto& [idx, p] : residual.components()) {
        for (const auto& [m, c] : p.terms()) {
            int r = m.degree();
            if (r < 1 || r > N) continue;
            DegreeResidual& row = table[static_cast<size_t>(r - 1)];
            row.zero = false;
            row.terms += 1;
            Rational a2 = c.abs2();
            if (a2 > row.max_abs2) row.max_abs2 = a2;
        }
    }
    return table;
}

}  // namespace

LinearizationResult linearize(const HomogeneousPair& pair, Schedule schedule) {
    const ProblemSpace& space = pair.space;
    space.validate();
    if (space.l != 0)
        throw InputError("bad-space", "homogeneous linearization expects a pure Lie-Poisson space");
    int n = space.n();
    int N = space.N;
    VarNames names = space.names();
    MultiVec pi = product_poisson(space);

    MultiVec X = pair.X.truncated(N);
    if (X.nvars() != n) throw InputError("dimension-mismatch", "field/space mismatch");
    if (!X.is_zero() && X.min_component_degree() < 1)
        throw DomainError("fixed-point", "X must vanish at the origin");

    // Defining relation [X, Pi] = -Pi through N.
    if (schouten(X, pi, N) != -pi)
        throw DomainError("not-homogeneous", "[X, Pi] = -Pi fails for the input pair");

    MultiVec I = MultiVec::euler(n);
    Poly h = recover_hamiltonian(X - I, space, N);
    Poly h1 = graded_component(h, 1);
    std::vector<Scalar> weights = cartan_weights(space, h1);

    // The adjoint action of h1 must be diagonal on coordinates.
    MultiVec xh1 = hamiltonian_vf(h1, pi, N);
    for (int i = 0; i < n; ++i)
        if (xh1.component({i}) != Poly::variable(n, i).scaled(weights[static_cast<size_t>(i)]))
            throw DomainError("h1-not-cartan", "X_{h1} is not diagonal in the root basis");

    NonresonanceReport nr = check_nonresonance(weights, N);
    if (!nr.nonresonant) {
        const ResonanceWitness& w = nr.resonances.front();
        throw DomainError("resonance", "vanishing Theta eigenvalue",
                          {{"degree", std::to_string(w.degree)},
                           {"monomial", monomial_str(w.lambda, names)}});
    }

    LinearizationResult result;
    result.h1 = h1;
    result.divisor_log = build_divisor_log(weights, N);
    result.linear_field = I + xh1;
    // One degree of headroom on the map so the bivector Jacobian identity is
    // checkable exactly through N.
    int N1 = N + 1;
    CoordMap acc = CoordMap::identity(n, N1);

    Poly tail = h - h1;
    MultiVec X_cur = X;
    for (auto [lo, hi] : make_blocks(schedule, N)) {
        BlockLog blk{lo, hi, false};
        Poly H_d(n);
        for (int u = lo; u <= hi; ++u) H_d += graded_component(tail, u);
        if (H_d.is_zero()) {
            blk.skipped = true;
            result.blocks.push_back(blk);
            continue;
        }
        Poly G_d = invert_theta(H_d, weights, names);

        // Every applied flow is Hamiltonian, hence preserves Pi exactly.
        if (flow_pushforward(pi, G_d, pi, N) != pi)
            throw DomainError("internal", "Hamiltonian flow failed to preserve Pi");

        X_cur = flow_pushforward(X_cur, G_d, pi, N);
        acc = coordmap_compose(flow_coordmap(G_d, pi, N1, -1), acc);

        // Transport the Hamiltonian bookkeeping through the same flow:
        // new h = exp({G,.})(h) + sum_k ad_G^{k-1}(e(G))/k!,
        // with e(G) = -sum_u (u-1) G^{(u)} accounting for the Euler part.
        Poly full = flow_pullback_function(h1 + tail, G_d, pi, N);
        Poly eG(n);
        for (int u = lo; u <= hi; ++u)
            eG += graded_component(G_d, u).scaled(Scalar(static_cast<long>(1 - u)));
        Poly term = eG;
        Scalar factorial(1);
        for (int k = 1; !term.is_zero(); ++k) {
            factorial *= Scalar(k);
            full += term.scaled(Scalar(1) / factorial);
            term = poisson_bracket(G_d, term, pi, N);
        }
        if (graded_component(full, 1) != h1)
            throw DomainError("internal", "linear part drifted during a block step");
        tail = full - h1;
        for (int u = 2; u <= hi; ++u)
            if (!graded_component(tail, u).is_zero())
                throw DomainError("internal", "block step left terms below its degree range");

        // The two tracks must agree: X_cur = I + X_{h1 + tail}.
        if (X_cur != I + hamiltonian_vf(h1 + tail, pi, N))
            throw DomainError("internal", "field and Hamiltonian bookkeeping diverged");
        result.blocks.push_back(blk);
    }

    MultiVec residual = X_cur - result.linear_field;
    result.residual_by_degree = residual_table(residual, N);

    result.map.N = N;
    result.map.images.reserve(acc.images.size());
    for (const Poly& img : acc.images) result.map.images.push_back(truncate(img, N));
    result.map.validate();
    result.map_preserves_pi = map_preserves_bivector(pi, acc, N);
    result.map_transports_field = map_pushforward_matches(X, acc, X_cur, N);

    result.success = residual.is_zero() && truncate(tail, N).is_zero() &&
                     result.map_preserves_pi && result.map_transports_field;
    return result;
}

}  // namespace pnf
