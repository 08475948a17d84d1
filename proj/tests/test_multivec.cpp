#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pnf/multivec.hpp"
#include "test_util.hpp"

using namespace pnf;
using namespace pnf_test;

namespace {

std::mt19937_64 rng(0x5eed0001);

// Direct expansion of X_f over a bivector given componentwise, bypassing the
// Schouten machinery: (X_f)_a = sum_i pi^{ia} df/dz_i.
MultiVec hamiltonian_by_table(const Poly& f, const MultiVec& pi) {
    int n = pi.nvars();
    MultiVec out(n, 1);
    for (int a = 0; a < n; ++a) {
        Poly comp(n);
        for (int i = 0; i < n; ++i) {
            if (i == a) continue;
            std::vector<int> idx = {std::min(i, a), std::max(i, a)};
            Poly entry = pi.component(idx);
            if (entry.is_zero()) continue;
            if (i > a) entry = -entry;
            comp += entry * derivative(f, i);
        }
        out.add_component({a}, comp);
    }
    return out;
}

int sign_of_grade_pair(int p, int q) { return ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("vector field applied to a function") {
    int n = 3;
    MultiVec X(n, 1);
    X.add_component({0}, Poly::variable(n, 1));  // z2 d/dz1
    Poly f = Poly::variable(n, 0) * Poly::variable(n, 0);
    CHECK(schouten(X, MultiVec::from_poly(f), -1).as_poly() ==
          Poly::variable(n, 0) * Poly::variable(n, 1) * Poly::constant(n, Scalar(2)));
    CHECK(X.apply(f, -1) == schouten(X, MultiVec::from_poly(f), -1).as_poly());
}

TEST_CASE("antisymmetric component insertion") {
    MultiVec v(3, 2);
    v.add_component({1, 0}, Poly::constant(3, Scalar(1)));
    CHECK(v.component({0, 1}) == Poly::constant(3, Scalar(-1)));
    v.add_component({0, 0}, Poly::constant(3, Scalar(5)));  // repeated index: no-op
    CHECK(v.component({0, 1}) == Poly::constant(3, Scalar(-1)));
    CHECK(v.components().size() == 1);
}

TEST_CASE("Euler identity for every builtin") {
    for (const std::string name : {"sl2", "sl3", "so3"}) {
        LieAlgebraData alg = *lie_builtin(name);
        MultiVec pi = lie_poisson(alg);
        MultiVec I = MultiVec::euler(alg.dim);
        CHECK(schouten(I, pi, -1) == -pi);
    }
}

TEST_CASE("Poisson condition via brute-force Jacobi of the constants") {
    // [Pi,Pi] = 0 iff the structure constants satisfy Jacobi; check both
    // routes agree on sl(2) and on a deliberately broken table.
    LieAlgebraData sl2 = lie_sl2();
    CHECK(schouten(lie_poisson(sl2), lie_poisson(sl2), -1).is_zero());

    LieAlgebraData broken = sl2;
    broken.cst(2, 0, 0) = Scalar(3);  // [z3,z1] = 3 z1 breaks nothing yet...
    broken.cst(0, 2, 0) = Scalar(-3);
    broken.weights[0][0] = Scalar(3);
    // ... but mismatched opposite-root scaling breaks Jacobi.
    ValidationReport rep = lie_validate(broken);
    bool jacobi_pass = true;
    for (const auto& c : rep.checks)
        if (c.name == "jacobi") jacobi_pass = c.pass;
    MultiVec pib(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Poly entry(3);
            for (int k = 0; k < 3; ++k)
                entry += Poly::variable(3, k).scaled(broken.cst(i, j, k));
            pib.add_component({i, j}, entry);
        }
    CHECK(jacobi_pass == schouten(pib, pib, -1).is_zero());
    CHECK_FALSE(jacobi_pass);
}

TEST_CASE("hamiltonian_vf pins the sign convention") {
    // l = 1, m = 0: X_{x1} = d/dy1.
    ProblemSpace space{1, LieAlgebraData{"trivial", 0, {}, {}, {}}, 4, Field::Q};
    MultiVec pi = product_poisson(space);
    MultiVec X = hamiltonian_vf(Poly::variable(2, 0), pi, 4);
    MultiVec expected(2, 1);
    expected.add_component({1}, Poly::constant(2, Scalar(1)));
    CHECK(X == expected);

    // constants have zero Hamiltonian field
    CHECK(hamiltonian_vf(Poly::constant(2, Scalar(7)), pi, 4).is_zero());
}

TEST_CASE("hamiltonian_vf of the sl2 Cartan coordinate scales by root values") {
    LieAlgebraData alg = lie_sl2();
    MultiVec pi = lie_poisson(alg);
    Poly z3 = Poly::variable(3, 2);
    MultiVec X = hamiltonian_vf(z3, pi, -1);
    // independent route: expand -[z3, Pi] through the component table
    CHECK(X == hamiltonian_by_table(z3, pi));
    CHECK(X.component({0}) == Poly::variable(3, 0).scaled(Scalar(2)));
    CHECK(X.component({1}) == Poly::variable(3, 1).scaled(Scalar(-2)));
    CHECK(X.component({2}).is_zero());
}

TEST_CASE("poisson_bracket reproduces the structure constants") {
    LieAlgebraData alg = lie_sl2();
    MultiVec pi = lie_poisson(alg);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Poly expected(3);
            for (int k = 0; k < 3; ++k)
                expected += Poly::variable(3, k).scaled(alg.cst(i, j, k));
            CHECK(poisson_bracket(Poly::variable(3, i), Poly::variable(3, j), pi, -1) ==
                  expected);
        }
}

TEST_CASE("poisson_bracket antisymmetry and Jacobi on sl3") {
    LieAlgebraData alg = lie_sl3();
    MultiVec pi = lie_poisson(alg);
    int N = 5;
    for (int t = 0; t < 6; ++t) {
        Poly f = random_poly(rng, 8, 0, 3, 4), g = random_poly(rng, 8, 0, 3, 4),
             h = random_poly(rng, 8, 0, 3, 4);
        CHECK(poisson_bracket(f, f, pi, N).is_zero());
        Poly jac = poisson_bracket(f, poisson_bracket(g, h, pi, N), pi, N) +
                   poisson_bracket(g, poisson_bracket(h, f, pi, N), pi, N) +
                   poisson_bracket(h, poisson_bracket(f, g, pi, N), pi, N);
        CHECK(truncate(jac, N - 1).is_zero());
    }
}

TEST_CASE("hamiltonian_vf agrees with poisson_bracket on random data") {
    ProblemSpace space = product_space_sl2(1, 6);
    MultiVec pi = product_poisson(space);
    for (int t = 0; t < 30; ++t) {
        Poly f = random_poly(rng, 5, 0, 3, 4), g = random_poly(rng, 5, 0, 3, 4);
        CHECK(hamiltonian_vf(f, pi, 6).apply(g, 6) == poisson_bracket(f, g, pi, 6));
    }
}

TEST_CASE("graded antisymmetry of the Schouten bracket") {
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<int> gr(0, 2);
        int p = gr(rng), q = gr(rng);
        if (p + q == 0) continue;
        MultiVec a = random_multivec(rng, 4, p, 3, 2);
        MultiVec b = random_multivec(rng, 4, q, 3, 2);
        MultiVec lhs = schouten(a, b, 8);
        MultiVec rhs = schouten(b, a, 8).scaled(Scalar(-sign_of_grade_pair(p, q)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("graded Jacobi identity") {
    // [a,[b,c]] = [[a,b],c] + (-1)^{(|a|-1)(|b|-1)} [b,[a,c]]
    for (int t = 0; t < 25; ++t) {
        std::uniform_int_distribution<int> gr(1, 2);
        int p = gr(rng), q = gr(rng), r = gr(rng);
        MultiVec a = random_multivec(rng, 3, p, 2, 2);
        MultiVec b = random_multivec(rng, 3, q, 2, 2);
        MultiVec c = random_multivec(rng, 3, r, 2, 2);
        int N = 9;
        MultiVec lhs = schouten(a, schouten(b, c, N), N);
        MultiVec rhs = schouten(schouten(a, b, N), c, N) +
                       schouten(b, schouten(a, c, N), N)
                           .scaled(Scalar(sign_of_grade_pair(p, q)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("flow pushforward basics") {
    ProblemSpace space = sl2_space(6);
    MultiVec pi = product_poisson(space);
    int n = 3, N = 6;

    MultiVec T = random_multivec(rng, n, 1, 3, 2);
    CHECK(flow_pushforward(T, Poly::zero(n), pi, N) == T.truncated(N));

    // Hamiltonian flows preserve the Poisson bivector exactly.
    Poly G = random_poly(rng, n, 2, 4, 4);
    CHECK(flow_pushforward(pi, G, pi, N) == pi);

    // generators with a linear part are rejected
    CHECK_THROWS_AS(flow_pushforward(T, Poly::variable(n, 0), pi, N), DomainError);
}

TEST_CASE("flow pushforward is inverted by the opposite generator") {
    ProblemSpace space = product_space_sl2(1, 5);
    MultiVec pi = product_poisson(space);
    int N = 5;
    for (int t = 0; t < 10; ++t) {
        // admissible bidegrees only: strip (2,0), (0,1), (1,0) parts
        Poly G = random_poly(rng, 5, 2, 3, 5);
        G -= bidegree_component(G, 2, 0, 1);
        MultiVec T = random_multivec(rng, 5, 1, 2, 2);
        MultiVec forward = flow_pushforward(T, G, pi, N);
        CHECK(flow_pushforward(forward, -G, pi, N) == T.truncated(N));
    }
}

TEST_CASE("non-terminating generators are reported") {
    // G = x1*y1 generates a linear flow; its adjoint acts on the shear
    // y1 d/dx1 as multiplication by -2 and the series never leaves degree 1.
    ProblemSpace space{1, LieAlgebraData{"trivial", 0, {}, {}, {}}, 4, Field::Q};
    MultiVec pi = product_poisson(space);
    Poly G = Poly::variable(2, 0) * Poly::variable(2, 1);
    MultiVec T(2, 1);
    T.add_component({0}, Poly::variable(2, 1));
    CHECK_THROWS_AS(flow_pushforward(T, G, pi, 4), DomainError);
}

TEST_CASE("flow pushforward matches the integrated coordinate map") {
    // For a quadratic generator on sl(2): exp(ad_{X_G}) T equals the
    // transport of T through the time-1 flow map of X_{-G}.
    ProblemSpace space = sl2_space(3);
    MultiVec pi = product_poisson(space);
    int N = 3;
    for (int t = 0; t < 8; ++t) {
        Poly G = random_poly(rng, 3, 2, 2, 3);
        MultiVec T(3, 1);
        for (int i = 0; i < 3; ++i) T.add_component({i}, random_poly(rng, 3, 1, 1, 2));
        MultiVec pushed = flow_pushforward(T, G, pi, N);
        CoordMap psi = flow_coordmap(G, pi, N + 1, -1);
        CHECK(map_pushforward_matches(T, psi, pushed, N));
    }
}

TEST_CASE("coordmap composition") {
    int n = 3, N = 4;
    CoordMap id = CoordMap::identity(n, N);
    CoordMap m;
    m.N = N;
    m.images = {Poly::variable(n, 0) + random_poly(rng, n, 2, 2, 2), Poly::variable(n, 1),
                Poly::variable(n, 2)};
    CHECK(coordmap_compose(m, id).images == m.images);
    CHECK(coordmap_compose(id, m).images == m.images);

    // compose(map, inverse of linear part) has identity linear part
    CoordMap lin;
    lin.N = N;
    lin.images = {Poly::variable(n, 1), Poly::variable(n, 0), Poly::variable(n, 2)};
    CoordMap mixed;
    mixed.N = N;
    mixed.images = {Poly::variable(n, 1) + random_poly(rng, n, 2, 2, 1), Poly::variable(n, 0),
                    Poly::variable(n, 2)};
    CoordMap composed = coordmap_compose(mixed, lin);
    CHECK(composed.linear_part() == Mat::identity(n));

    // two quadratic perturbations against a naive substitution oracle
    for (int t = 0; t < 6; ++t) {
        CoordMap f, g;
        f.N = g.N = 4;
        for (int i = 0; i < n; ++i) {
            f.images.push_back(Poly::variable(n, i) + random_poly(rng, n, 2, 2, 2));
            g.images.push_back(Poly::variable(n, i) + random_poly(rng, n, 2, 2, 2));
        }
        CoordMap fg = coordmap_compose(f, g);
        for (int i = 0; i < n; ++i) {
            // naive: expand with exact products then truncate
            Poly expect(n);
            for (const auto& [mono, c] : f.images[static_cast<size_t>(i)].terms()) {
                Poly term = Poly::constant(n, c);
                for (int v = 0; v < n; ++v)
                    for (uint32_t k = 0; k < mono.e[static_cast<size_t>(v)]; ++k)
                        term = term * g.images[static_cast<size_t>(v)];
                expect += term;
            }
            CHECK(fg.images[static_cast<size_t>(i)] == truncate(expect, 4));
        }
    }
}

TEST_CASE("coordmap validation") {
    int n = 2, N = 3;
    CoordMap bad;
    bad.N = N;
    bad.images = {Poly::variable(n, 0) + Poly::constant(n, Scalar(1)), Poly::variable(n, 1)};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CoordMap singular;
    singular.N = N;
    singular.images = {Poly::variable(n, 0), Poly::variable(n, 0)};
    CHECK_THROWS_AS(singular.validate(), DomainError);
}
