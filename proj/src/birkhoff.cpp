#include "pnf/birkhoff.hpp"

#include <complex>
#include <sstream>

namespace pnf {

std::pair<MultiVec, MultiVec> split_hamiltonian_field(const Poly& f, const ProblemSpace& space) {
    int n = space.n(), l = space.l, m = space.m();
    int N = space.N;
    MultiVec pi_symp(n, 2), pi_g(n, 2);
    for (int i = 0; i < l; ++i) pi_symp.add_component({i, l + i}, Poly::constant(n, Scalar(1)));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Poly entry(n);
            for (int k = 0; k < m; ++k) {
                const Scalar& v = space.algebra.cst(i, j, k);
                if (!v.is_zero()) entry += Poly::variable(n, 2 * l + k).scaled(v);
            }
            pi_g.add_component({2 * l + i, 2 * l + j}, entry);
        }
    return {hamiltonian_vf(f, pi_symp, N), hamiltonian_vf(f, pi_g, N)};
}

Scalar ss_eigenvalue(const Monomial& mono, const std::vector<Scalar>& gamma,
                     const std::vector<Scalar>& alpha, int l) {
    if (mono.nvars() != 2 * l + static_cast<int>(alpha.size()))
        throw InputError("dimension-mismatch", "monomial does not match the (l, m) split");
    Scalar v;
    for (int j = 0; j < l; ++j) {
        long diff = static_cast<long>(mono.e[static_cast<size_t>(l + j)]) -
                    static_cast<long>(mono.e[static_cast<size_t>(j)]);
        if (diff != 0) v += gamma[static_cast<size_t>(j)] * Scalar(diff);
    }
    for (size_t i = 0; i < alpha.size(); ++i) {
        uint32_t e = mono.e[static_cast<size_t>(2 * l) + i];
        if (e != 0) v += alpha[i] * Scalar(static_cast<long>(e));
    }
    return v;
}

std::pair<Poly, Poly> resonant_split(const Poly& f, const std::vector<Scalar>& gamma,
                                     const std::vector<Scalar>& alpha, int l) {
    Poly K(f.nvars()), K_tilde(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        Scalar ev = ss_eigenvalue(m, gamma, alpha, l);
        if (ev.is_zero())
            K_tilde.add_term(m, c);
        else
            K.add_term(m, c / ev);
    }
    return {K, K_tilde};
}

namespace {

// Stage of a bidegree: monomials of bidegree (0,q) sit at stage q, the rest
// at p+q-1.
int stage_of(int p, int q) { return p == 0 ? q : p + q - 1; }

Poly stage_component(const Poly& f, int stage, int l) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        auto [p, q] = bidegree_of(m, l);
        if (stage_of(p, q) == stage) out.add_term(m, c);
    }
    return out;
}

Poly below_stage(const Poly& f, int stage, int l) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        auto [p, q] = bidegree_of(m, l);
        if (stage_of(p, q) < stage) out.add_term(m, c);
    }
    return out;
}

}  // namespace

BirkhoffResult birkhoff_normalize(const BirkhoffInput& input) {
    const ProblemSpace& space = input.space;
    space.validate();
    int n = space.n(), l = space.l;
    int N = space.N;
    if (static_cast<int>(input.gamma.size()) != l)
        throw InputError("bad-gamma", "gamma must list one frequency per symplectic pair");
    if (space.field == Field::Q) {
        for (const Scalar& g : input.gamma)
            if (!g.is_real()) throw InputError("field-mismatch", "gamma leaves the field Q");
    }

    MultiVec pi = product_poisson(space);
    std::vector<Scalar> alpha = cartan_weights(space, input.h1);

    // H(0) = 0 (constants stripped); X_H(0) = 0 demands no (1,0) terms.
    Poly H = truncate(input.H, N);
    H -= Poly::constant(n, H.constant_term());
    if (!bidegree_component(H, 1, 0, l).is_zero())
        throw DomainError("xh-at-origin", "X_H does not vanish at the origin "
                                          "(H has bidegree-(1,0) terms; rectification is out of scope)");

    Poly h2(n);
    for (int j = 0; j < l; ++j)
        h2 += poly_mul_trunc(Poly::variable(n, j), Poly::variable(n, l + j), N)
                  .scaled(input.gamma[static_cast<size_t>(j)]);
    Poly H_ss = input.h1 + h2;

    // The declared semisimple data must match the linear part: the remainders
    // generate nilpotent fields commuting with X_{H_ss} (Jordan-Chevalley).
    Poly lin_block = bidegree_component(H, 0, 1, l) + bidegree_component(H, 2, 0, l);
    Mat M = linear_part_matrix(hamiltonian_vf(lin_block, pi, N));
    Mat S = linear_part_matrix(hamiltonian_vf(H_ss, pi, N));
    Mat Nmat = mat_sub(M, S);
    if (!mat_is_nilpotent(Nmat))
        throw DomainError("nilpotency-check", "H^{0,1}-h1 and H^{2,0}-h2 must generate "
                                              "nilpotent linear fields");
    if (!mat_sub(mat_mul(S, Nmat), mat_mul(Nmat, S)).is_zero())
        throw DomainError("nilpotency-check",
                          "the declared semisimple part does not commute with the remainder");

    BirkhoffResult result;
    result.H_ss = H_ss;
    // The map accumulates one degree above N: the bivector Jacobian identity
    // can then be verified exactly through N on the truncated report.
    int N1 = N + 1;
    CoordMap acc = CoordMap::identity(n, N1);

    Poly cur = H;
    int max_stage = N;
    int bound = n + 1;
    for (int r = 1; r <= max_stage; ++r) {
        StageLog log;
        log.stage = r;
        Poly frozen_below = below_stage(cur, r, l);
        for (;;) {
            Poly Hr = stage_component(cur, r, l);
            auto [K, Ktilde] = resonant_split(Hr, input.gamma, alpha, l);
            if (K.is_zero()) break;
            if (++log.iterations > bound) {
                throw DomainError(
                    "nilpotent-loop",
                    "stage correction exceeded the nilpotency bound; the declared "
                    "(gamma, h1) cannot be the semisimple part of the linear part",
                    {{"stage", std::to_string(r)}, {"bound", std::to_string(bound)}});
            }
            if (flow_pushforward(pi, K, pi, N) != pi)
                throw DomainError("internal", "Hamiltonian flow failed to preserve Pi");
            cur = flow_pullback_function(cur, K, pi, N);
            acc = coordmap_compose(acc, flow_coordmap(K, pi, N1, +1));
        }
        log.lower_stages_intact = (below_stage(cur, r, l) == frozen_below);
        if (!log.lower_stages_intact)
            throw DomainError("internal", "a stage modified lower-stage terms");
        result.loop_log.push_back(log);
    }

    result.H_normalized = cur;
    result.residual = truncate(poisson_bracket(result.H_normalized, H_ss, pi, N), N);
    result.success = result.residual.is_zero();

    result.map.N = N;
    result.map.images.reserve(acc.images.size());
    for (const Poly& img : acc.images) result.map.images.push_back(truncate(img, N));
    result.map.validate();

    // Independent consistency of the reported map: H o map through N and
    // Pi-preservation (the latter on the degree-(N+1) accumulator, which is
    // what makes the identity meaningful through N).
    if (substitute(H, result.map.images, N) != result.H_normalized)
        throw DomainError("internal", "composed map does not reproduce H_normalized");
    if (!map_preserves_bivector(pi, acc, N))
        throw DomainError("internal", "composed map does not preserve Pi");
    return result;
}

namespace {

using UPoly = std::vector<Scalar>;  // dense univariate, low-to-high

UPoly upoly_trim(UPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

UPoly upoly_derivative(const UPoly& p) {
    UPoly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(static_cast<long>(k)));
    return upoly_trim(d);
}

UPoly upoly_monic(UPoly p) {
    p = upoly_trim(std::move(p));
    if (p.empty()) return p;
    Scalar lead = p.back();
    for (Scalar& c : p) c = c / lead;
    return p;
}

// Remainder of a by b (b nonzero).
UPoly upoly_mod(UPoly a, const UPoly& b) {
    a = upoly_trim(std::move(a));
    UPoly bb = upoly_trim(b);
    while (a.size() >= bb.size() && !a.empty()) {
        Scalar f = a.back() / bb.back();
        size_t shift = a.size() - bb.size();
        for (size_t k = 0; k < bb.size(); ++k) a[shift + k] -= f * bb[k];
        a = upoly_trim(std::move(a));
    }
    return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    a = upoly_trim(std::move(a));
    b = upoly_trim(std::move(b));
    while (!b.empty()) {
        UPoly r = upoly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return upoly_monic(std::move(a));
}

// Exact quotient (remainder must vanish).
UPoly upoly_div_exact(UPoly a, const UPoly& b) {
    a = upoly_trim(std::move(a));
    UPoly bb = upoly_trim(b);
    UPoly q(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0, Scalar());
    while (a.size() >= bb.size() && !a.empty()) {
        Scalar f = a.back() / bb.back();
        size_t shift = a.size() - bb.size();
        q[shift] = f;
        for (size_t k = 0; k < bb.size(); ++k) a[shift + k] -= f * bb[k];
        a = upoly_trim(std::move(a));
    }
    if (!a.empty()) throw DomainError("internal", "inexact polynomial division");
    return upoly_trim(std::move(q));
}

Scalar upoly_eval(const UPoly& p, const Scalar& x) {
    Scalar v;
    for (size_t k = p.size(); k-- > 0;) v = v * x + p[k];
    return v;
}

// Best rational approximation with bounded denominator (continued fractions).
Rational rational_reconstruct(double x, long max_den) {
    if (std::abs(x) < 1e-12) return Rational(0);
    bool neg = x < 0;
    double v = std::abs(x);
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double a_floor = std::floor(frac);
        if (a_floor > 9.0e17) break;
        long a = static_cast<long>(a_floor);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - a_floor;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rational r(p1, q1 == 0 ? 1 : q1);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

double to_double(const Rational& q) { return q.get_d(); }

// Approximate the distinct roots of a monic squarefree polynomial
// (Durand-Kerner), then certify exact Gaussian-rational roots.
std::vector<Scalar> certified_roots(const UPoly& q_in) {
    UPoly q = upoly_monic(q_in);
    size_t deg = q.size() - 1;
    std::vector<Scalar> roots;
    if (deg == 0) return roots;

    std::vector<std::complex<double>> c(deg + 1);
    for (size_t k = 0; k <= deg; ++k)
        c[k] = {to_double(q[k].re), to_double(q[k].im)};
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (size_t k = deg + 1; k-- > 0;) v = v * x + c[k];
        return v;
    };
    std::vector<std::complex<double>> zs(deg);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (size_t k = 0; k < deg; ++k) {
        acc *= seed;
        zs[k] = acc;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (size_t k = 0; k < deg; ++k) {
            std::complex<double> denom(1.0, 0.0);
            for (size_t j = 0; j < deg; ++j)
                if (j != k) denom *= (zs[k] - zs[j]);
            std::complex<double> delta = eval(zs[k]) / denom;
            zs[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    for (const auto& z : zs) {
        Scalar cand(rational_reconstruct(z.real(), 1000000000L),
                    rational_reconstruct(z.imag(), 1000000000L));
        if (!upoly_eval(q, cand).is_zero())
            throw DomainError("nonsplit-charpoly",
                              "an eigenvalue does not lie in Q(i)");
        roots.push_back(cand);
    }
    std::sort(roots.begin(), roots.end());
    for (size_t k = 1; k < roots.size(); ++k)
        if (roots[k] == roots[k - 1])
            throw DomainError("nonsplit-charpoly", "failed to separate eigenvalues");
    return roots;
}

}  // namespace

JordanChevalley semisimple_part_oracle(const Mat& L) {
    if (L.rows != L.cols) throw InputError("bad-matrix", "square matrix required");
    int n = L.rows;
    UPoly p = charpoly(L);
    UPoly dp = upoly_derivative(p);
    UPoly g = upoly_gcd(p, dp);
    UPoly q = g.empty() ? upoly_monic(p) : upoly_div_exact(p, g);

    JordanChevalley jc;
    jc.eigenvalues = certified_roots(q);

    // Newton iteration A <- A - q(A) q'(A)^{-1} converges to the semisimple
    // part (q'(A) stays invertible since q is squarefree and q(A) nilpotent).
    UPoly dq = upoly_derivative(q);
    Mat A = L;
    int max_iter = 1;
    while ((1 << max_iter) < n + 1) ++max_iter;
    max_iter += 2;
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        Mat qA = mat_poly_eval(q, A);
        if (qA.is_zero()) {
            converged = true;
            break;
        }
        A = mat_sub(A, mat_mul(qA, mat_inverse(mat_poly_eval(dq, A))));
    }
    if (!converged && !mat_poly_eval(q, A).is_zero())
        throw DomainError("internal", "Jordan-Chevalley iteration failed to converge");
    jc.S = A;
    jc.Npart = mat_sub(L, A);
    if (!mat_is_nilpotent(jc.Npart))
        throw DomainError("internal", "Jordan-Chevalley nilpotent part is not nilpotent");
    if (!mat_sub(mat_mul(jc.S, jc.Npart), mat_mul(jc.Npart, jc.S)).is_zero())
        throw DomainError("internal", "Jordan-Chevalley parts do not commute");
    return jc;
}

}  // namespace pnf
