#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pnf/birkhoff.hpp"
#include "pnf/enumerate.hpp"
#include "test_util.hpp"

using namespace pnf;
using namespace pnf_test;

namespace {

std::mt19937_64 rng(0x5eed0003);

// Admissible random input on (K^2 x sl(2)*, l = 1): H = h1 + h2 + free terms
// of stages >= 1 with no extra (0,1)/(2,0)/(1,0) content.
BirkhoffInput random_input(const ProblemSpace& space, std::mt19937_64& r, int max_degree) {
    int n = space.n();
    std::uniform_int_distribution<long> pick(1, 6);
    Rational gq(pick(r), pick(r));
    gq.canonicalize();
    Scalar gamma_v(gq);
    Rational cq(pick(r), pick(r));
    cq.canonicalize();
    Scalar c(cq);
    Poly h1 = Poly::variable(n, 4).scaled(c);  // c * z3 (coordinates x1,y1,z1,z2,z3)
    Poly h2 = (Poly::variable(n, 0) * Poly::variable(n, 1)).scaled(gamma_v);

    Poly extra(n);
    for (int t = 0; t < 8; ++t) {
        Monomial m = random_monomial(r, n, 2, max_degree);
        auto [p, q] = bidegree_of(m, space.l);
        if ((p == 2 && q == 0) || (p == 0 && q == 1) || (p == 1 && q == 0)) continue;
        extra.add_term(m, random_scalar(r));
    }
    return BirkhoffInput{space, h1 + h2 + extra, {gamma_v}, h1};
}

}  // namespace

TEST_CASE("split of the Hamiltonian field") {
    ProblemSpace space = product_space_sl2(1, 5);
    MultiVec pi = product_poisson(space);
    int n = 5;
    VarNames names = space.names();

    // f = z1 z2: no x,y dependence, so the symplectic part vanishes
    auto [s1, g1] = split_hamiltonian_field(parse_poly("1*z1*z2", names), space);
    CHECK(s1.is_zero());
    CHECK_FALSE(g1.is_zero());

    // f = x1 y1: transverse part vanishes
    auto [s2, g2] = split_hamiltonian_field(parse_poly("1*x1*y1", names), space);
    CHECK(g2.is_zero());
    CHECK_FALSE(s2.is_zero());

    // mixed f: parts sum to the full Hamiltonian field
    for (int t = 0; t < 10; ++t) {
        Poly f = random_poly(rng, n, 1, 4, 5);
        auto [xs, xg] = split_hamiltonian_field(f, space);
        CHECK(xs + xg == hamiltonian_vf(f, pi, space.N));
        for (const auto& [idx, p] : xs.components()) CHECK(idx[0] < 2 * space.l);
        for (const auto& [idx, p] : xg.components()) CHECK(idx[0] >= 2 * space.l);
    }
}

TEST_CASE("ss_eigenvalue basics") {
    // l = 1, m = 3 (sl2 weights with h1 = c z3)
    std::vector<Scalar> gamma = {Scalar(Rational(3, 2))};
    std::vector<Scalar> alpha = {Scalar(2), Scalar(-2), Scalar(0)};

    // lambda = mu, <alpha,nu> = 0: resonant
    Monomial m1(5);
    m1.e = {1, 1, 0, 0, 2};
    CHECK(ss_eigenvalue(m1, gamma, alpha, 1).is_zero());

    // z1 z2 is resonant for sl2
    Monomial m2(5);
    m2.e = {0, 0, 1, 1, 0};
    CHECK(ss_eigenvalue(m2, gamma, alpha, 1).is_zero());
}

TEST_CASE("ss_eigenvalue table matches the direct bracket of H_ss") {
    ProblemSpace space = product_space_sl2(1, 4);
    MultiVec pi = product_poisson(space);
    int n = 5;
    Scalar gamma_v(Rational(3, 2));
    Poly h1 = Poly::variable(n, 4).scaled(Scalar(Rational(1, 2)));  // (1/2) z3
    Poly h2 = (Poly::variable(n, 0) * Poly::variable(n, 1)).scaled(gamma_v);
    Poly H_ss = h1 + h2;
    std::vector<Scalar> alpha = cartan_weights(space, h1);
    for (int d = 1; d <= 2; ++d)
        enumerate_degree(n, d, [&](const Monomial& m) {
            Poly mono = Poly::monomial(n, m, Scalar(1));
            Poly bracket = poisson_bracket(H_ss, mono, pi, -1);
            CHECK(bracket == mono.scaled(ss_eigenvalue(m, {gamma_v}, alpha, 1)));
        });
}

TEST_CASE("resonant_split reassembles f") {
    ProblemSpace space = product_space_sl2(1, 5);
    MultiVec pi = product_poisson(space);
    int n = 5;
    Scalar gamma_v(Rational(5, 3));
    Poly h1 = Poly::variable(n, 4);
    Poly h2 = (Poly::variable(n, 0) * Poly::variable(n, 1)).scaled(gamma_v);
    Poly H_ss = h1 + h2;
    std::vector<Scalar> alpha = cartan_weights(space, h1);

    // fully resonant input
    Poly res = Poly::variable(n, 4) * Poly::variable(n, 4);
    auto [k0, kt0] = resonant_split(res, {gamma_v}, alpha, 1);
    CHECK(k0.is_zero());
    CHECK(kt0 == res);

    // single non-resonant monomial with eigenvalue e: K = f/e
    Poly single = Poly::variable(n, 2);  // z1, eigenvalue <alpha,e1> = 2
    auto [k1, kt1] = resonant_split(single, {gamma_v}, alpha, 1);
    CHECK(kt1.is_zero());
    CHECK(k1 == single.scaled(Scalar(Rational(1, 2))));

    // random f: f = {H_ss, K} + K_tilde via the actual bracket
    for (int t = 0; t < 15; ++t) {
        Poly f = random_poly(rng, n, 0, 5, 8);
        auto [K, Kt] = resonant_split(f, {gamma_v}, alpha, 1);
        CHECK(poisson_bracket(H_ss, K, pi, -1) + Kt == f);
        CHECK(poisson_bracket(H_ss, Kt, pi, -1).is_zero());
        // K has no resonant monomials
        for (const auto& [m, c] : K.terms())
            CHECK_FALSE(ss_eigenvalue(m, {gamma_v}, alpha, 1).is_zero());
    }
}

TEST_CASE("birkhoff on an already-normal Hamiltonian") {
    ProblemSpace space = product_space_sl2(1, 5);
    int n = 5;
    Poly h1 = Poly::variable(n, 4);
    Poly h2 = (Poly::variable(n, 0) * Poly::variable(n, 1)).scaled(Scalar(1));
    BirkhoffInput input{space, h1 + h2, {Scalar(1)}, h1};
    BirkhoffResult res = birkhoff_normalize(input);
    CHECK(res.success);
    CHECK(res.map.is_identity());
    CHECK(res.residual.is_zero());
    CHECK(res.H_normalized == res.H_ss);
    for (const auto& s : res.loop_log) CHECK(s.iterations == 0);
}

TEST_CASE("single-stage hand solve on the Lie-Poisson block") {
    // l = 0, sl(2), H = z3 + z1^2: the z1^2 term has eigenvalue 2<alpha,h1>
    // and one split removes it.
    ProblemSpace space = sl2_space(5);
    int n = 3;
    Poly h1 = Poly::variable(n, 2);
    Poly H = h1 + Poly::variable(n, 0) * Poly::variable(n, 0);
    BirkhoffInput input{space, H, {}, h1};
    BirkhoffResult res = birkhoff_normalize(input);
    CHECK(res.success);
    CHECK(res.residual.is_zero());
    // every surviving monomial is a power product of z3 and z1 z2
    for (const auto& [m, c] : res.H_normalized.terms()) CHECK(m.e[0] == m.e[1]);
    // hand check: stage 2 does the whole job in one iteration
    for (const auto& s : res.loop_log) CHECK(s.iterations <= 1);
    // the oracle route: K = z1^2 / 4 reproduces the first map exactly
    std::vector<Scalar> alpha = cartan_weights(space, h1);
    auto [K, Kt] = resonant_split(Poly::variable(n, 0) * Poly::variable(n, 0), {}, alpha, 0);
    CHECK(K == (Poly::variable(n, 0) * Poly::variable(n, 0)).scaled(Scalar(Rational(1, 4))));
    CHECK(Kt.is_zero());
}

TEST_CASE("birkhoff pipeline on random admissible inputs") {
    ProblemSpace space = product_space_sl2(1, 5);
    MultiVec pi = product_poisson(space);
    for (int t = 0; t < 6; ++t) {
        BirkhoffInput input = random_input(space, rng, 3);
        BirkhoffResult res = birkhoff_normalize(input);
        CHECK(res.success);
        CHECK(res.residual.is_zero());
        CHECK(poisson_bracket(res.H_normalized, res.H_ss, pi, space.N).is_zero());
        // H_ss untouched, map reproduces the normalization by substitution
        Poly stripped = truncate(input.H, space.N);
        stripped -= Poly::constant(space.n(), stripped.constant_term());
        CHECK(substitute(stripped, res.map.images, space.N) == res.H_normalized);
        for (const auto& s : res.loop_log) {
            CHECK(s.iterations <= space.n() + 1);
            CHECK(s.lower_stages_intact);
        }
    }
}

TEST_CASE("birkhoff rejects bad declarations") {
    ProblemSpace space = product_space_sl2(1, 4);
    int n = 5;
    Poly h1 = Poly::variable(n, 4);
    Poly h2 = (Poly::variable(n, 0) * Poly::variable(n, 1)).scaled(Scalar(1));

    // bidegree (1,0) terms: X_H(0) != 0
    BirkhoffInput moving{space, h1 + h2 + Poly::variable(n, 0), {Scalar(1)}, h1};
    CHECK_THROWS_AS(birkhoff_normalize(moving), DomainError);

    // declared h1 = z3 but H contains 2 z3: remainder z3 is semisimple, not
    // nilpotent
    BirkhoffInput wrong{space, h1.scaled(Scalar(2)) + h2, {Scalar(1)}, h1};
    CHECK_THROWS_AS(birkhoff_normalize(wrong), DomainError);

    // declared gamma mismatched against H^{2,0}
    BirkhoffInput wrongg{space, h1 + h2.scaled(Scalar(3)), {Scalar(1)}, h1};
    CHECK_THROWS_AS(birkhoff_normalize(wrongg), DomainError);
}

TEST_CASE("classical Birkhoff on a pure symplectic space (m = 0)") {
    // Degenerate product: no transverse block at all. The normal form of a
    // one-degree-of-freedom Hamiltonian is a series in x1*y1.
    ProblemSpace space{1, LieAlgebraData{"trivial", 0, {}, {}, {}}, 6, Field::Q};
    int n = 2;
    VarNames names = space.names();
    Poly h2 = parse_poly("2/3*x1*y1", names);
    Poly H = h2 + parse_poly("1*x1^3 + 1/2*x1*y1^2 - 1*y1^4", names);
    BirkhoffInput input{space, H, {Scalar(Rational(2, 3))}, Poly::zero(n)};
    BirkhoffResult res = birkhoff_normalize(input);
    CHECK(res.success);
    CHECK(res.residual.is_zero());
    for (const auto& [m, c] : res.H_normalized.terms()) CHECK(m.e[0] == m.e[1]);
    MultiVec pi = product_poisson(space);
    CHECK(poisson_bracket(res.H_normalized, res.H_ss, pi, space.N).is_zero());
}

TEST_CASE("birkhoff handles a genuine nilpotent stage-1 block") {
    // l = 2 with equal frequencies: H^{2,0} - h2 = x1 y2 commutes with h2 and
    // is nilpotent, exercising the F1 loop machinery.
    ProblemSpace space{2, lie_sl2(), 4, Field::Q};
    int n = 7;  // x1 x2 y1 y2 z1 z2 z3
    VarNames names = space.names();
    Poly h1 = Poly::variable(n, 6);
    Poly h2 = parse_poly("1*x1*y1 + 1*x2*y2", names);
    Poly F1 = parse_poly("1*x1*y2", names);
    Poly H = h1 + h2 + F1 + parse_poly("1*x1*z1*z2 + 1*y2*z3^2", names);
    BirkhoffInput input{space, H, {Scalar(1), Scalar(1)}, h1};
    BirkhoffResult res = birkhoff_normalize(input);
    CHECK(res.success);
    CHECK(res.residual.is_zero());
    // F1 must survive normalization (it is part of the nilpotent linear part)
    CHECK(bidegree_component(res.H_normalized, 2, 0, 2) == h2 + F1);
}

TEST_CASE("jordan-chevalley oracle basics") {
    // diagonal input: S = L, N = 0
    Mat D(3, 3);
    D.at(0, 0) = Scalar(2);
    D.at(1, 1) = Scalar(Rational(1, 3));
    D.at(2, 2) = Scalar(-1);
    JordanChevalley jc = semisimple_part_oracle(D);
    CHECK(jc.S == D);
    CHECK(jc.Npart.is_zero());
    CHECK(jc.eigenvalues.size() == 3);

    // single 2x2 Jordan block: S = a I, N = superdiagonal
    Mat J(2, 2);
    J.at(0, 0) = Scalar(Rational(5, 2));
    J.at(1, 1) = Scalar(Rational(5, 2));
    J.at(0, 1) = Scalar(1);
    JordanChevalley jj = semisimple_part_oracle(J);
    CHECK(jj.S == mat_scale(Mat::identity(2), Scalar(Rational(5, 2))));
    CHECK(jj.Npart.at(0, 1) == Scalar(1));

    // complex eigenvalues in Q(i): a rotation generator
    Mat R(2, 2);
    R.at(0, 1) = Scalar(-1);
    R.at(1, 0) = Scalar(1);
    JordanChevalley jr = semisimple_part_oracle(R);
    CHECK(jr.S == R);
    CHECK(jr.eigenvalues[0] == Scalar(Rational(0), Rational(-1)));
    CHECK(jr.eigenvalues[1] == Scalar(Rational(0), Rational(1)));
}

TEST_CASE("jordan-chevalley rejects non-split spectra") {
    // companion matrix of t^2 - 2: eigenvalues +-sqrt(2), outside Q(i)
    Mat C(2, 2);
    C.at(0, 1) = Scalar(2);
    C.at(1, 0) = Scalar(1);
    try {
        semisimple_part_oracle(C);
        FAIL("expected nonsplit-charpoly");
    } catch (const DomainError& e) {
        CHECK(e.code() == "nonsplit-charpoly");
    }
}

TEST_CASE("oracle agrees with the pipeline on random admissible inputs") {
    ProblemSpace space = product_space_sl2(1, 4);
    MultiVec pi = product_poisson(space);
    for (int t = 0; t < 5; ++t) {
        BirkhoffInput input = random_input(space, rng, 3);
        BirkhoffResult res = birkhoff_normalize(input);
        REQUIRE(res.success);
        // the normalized linear part decomposes with S = matrix of X_{H_ss}
        Mat L = linear_part_matrix(hamiltonian_vf(res.H_normalized, pi, space.N));
        Mat S_expected = linear_part_matrix(hamiltonian_vf(res.H_ss, pi, space.N));
        JordanChevalley jc = semisimple_part_oracle(L);
        CHECK(jc.S == S_expected);
    }
}
