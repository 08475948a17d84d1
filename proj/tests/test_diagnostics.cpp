#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pnf/diagnostics.hpp"
#include "pnf/enumerate.hpp"
#include "test_util.hpp"

using namespace pnf;
using namespace pnf_test;

namespace {

std::mt19937_64 rng(0x5eed0005);

// Plain enumeration oracle for omega_d, no pruning, no threading.
Rational omega_sq_oracle(const std::vector<Scalar>& w, int d) {
    int n = static_cast<int>(w.size());
    Rational cap(1, 2 * d);
    Rational best = cap * cap;
    for (int shell = 2; shell <= (1 << (d + 1)); ++shell) {
        enumerate_degree(n, shell, [&](const Monomial& lambda) {
            Scalar v(static_cast<long>(shell - 1));
            for (int i = 0; i < n; ++i)
                if (lambda.e[static_cast<size_t>(i)] != 0)
                    v += w[static_cast<size_t>(i)] *
                         Scalar(static_cast<long>(lambda.e[static_cast<size_t>(i)]));
            Rational sq = v.abs2();
            if (sq < best) best = sq;
        });
    }
    return best;
}

}  // namespace

TEST_CASE("omega with zero weights caps at 1/(2d)") {
    DivisorProfile p = omega_sequence({Scalar(0), Scalar(0), Scalar(0)}, 4);
    REQUIRE(p.omegas.size() == 4);
    for (const OmegaEntry& e : p.omegas) {
        CHECK(e.exact);
        CHECK(e.value_exact == Rational(1, 2 * e.d));
    }
    CHECK(p.exact);
}

TEST_CASE("omega on sl2-style weights matches the enumeration oracle") {
    // <alpha, h1> = 1/3: weights (1/3, -1/3, 0) up to labeling
    std::vector<Scalar> w = {Scalar(Rational(1, 3)), Scalar(Rational(-1, 3)), Scalar(0)};
    DivisorProfile p = omega_sequence(w, 3);
    for (const OmegaEntry& e : p.omegas) CHECK(e.value_sq == omega_sq_oracle(w, e.d));
}

TEST_CASE("omega matches the oracle on random rational weights") {
    for (int t = 0; t < 6; ++t) {
        std::vector<Scalar> w;
        for (int i = 0; i < 3; ++i) {
            std::uniform_int_distribution<long> num(-4, 4);
            std::uniform_int_distribution<long> den(2, 7);
            Rational q(num(rng), den(rng));
            q.canonicalize();
            // avoid exact resonances for this comparison
            if (q == Rational(-1, 2) || q == Rational(-1)) q += Rational(1, 11);
            w.push_back(Scalar(q));
        }
        DivisorProfile p = [&] {
            try {
                return omega_sequence(w, 3);
            } catch (const DomainError&) {
                w.assign(3, Scalar(Rational(1, 5)));
                return omega_sequence(w, 3);
            }
        }();
        for (const OmegaEntry& e : p.omegas) CHECK(e.value_sq == omega_sq_oracle(w, e.d));
    }
}

TEST_CASE("omega is deterministic across thread counts") {
    std::vector<Scalar> w = {Scalar(Rational(2, 7)), Scalar(Rational(-3, 5)),
                             Scalar(Rational(1, 4))};
    DivisorProfile p1 = omega_sequence(w, 3, 1);
    DivisorProfile p4 = omega_sequence(w, 3, 4);
    REQUIRE(p1.omegas.size() == p4.omegas.size());
    for (size_t k = 0; k < p1.omegas.size(); ++k) {
        CHECK(p1.omegas[k].value_sq == p4.omegas[k].value_sq);
        CHECK(p1.omegas[k].value_exact == p4.omegas[k].value_exact);
    }
}

TEST_CASE("resonant weights raise a witnessed error") {
    // divisor at lambda = (2,0): 1 + 2*(-1/2) = 0
    std::vector<Scalar> w = {Scalar(Rational(-1, 2)), Scalar(0)};
    CHECK_THROWS_AS(omega_sequence(w, 2), DomainError);
}

TEST_CASE("omega monotonicity and Bruno partial sums") {
    for (int t = 0; t < 4; ++t) {
        std::vector<Scalar> w;
        for (int i = 0; i < 3; ++i) {
            std::uniform_int_distribution<long> num(-3, 3);
            Rational q(num(rng), 17);
            q.canonicalize();
            w.push_back(Scalar(q));
        }
        DivisorProfile p = omega_sequence(w, 4);
        for (size_t k = 0; k < p.omegas.size(); ++k) {
            CHECK(p.omegas[k].value_sq <= Rational(1, 2 * p.omegas[k].d) *
                                              Rational(1, 2 * p.omegas[k].d));
            if (k > 0) {
                CHECK(p.omegas[k].value_sq <= p.omegas[k - 1].value_sq);
                CHECK(p.bruno_partials[k] >= p.bruno_partials[k - 1]);
            }
        }
    }
}

TEST_CASE("siegel check") {
    // all-zero gamma: divisor >= 1 on the scanned range, bound <= 1
    SiegelReport clean = siegel_check({Scalar(0), Scalar(0)}, Rational(1), 3, 9);
    CHECK(clean.violations.empty());
    CHECK(clean.scanned > 0);

    // gamma containing -1/2: divisor vanishes at lambda = (2,0)
    SiegelReport dirty = siegel_check({Scalar(Rational(-1, 2)), Scalar(0)}, Rational(1), 3, 6);
    REQUIRE(!dirty.violations.empty());
    bool witness = false;
    for (const auto& v : dirty.violations)
        if (v.lambda.e == std::vector<uint32_t>{2, 0}) witness = v.divisor.is_zero();
    CHECK(witness);

    // a Diophantine-looking vector: margins reported, exact arithmetic
    SiegelReport sampled =
        siegel_check({Scalar(Rational(3, 7)), Scalar(Rational(-5, 11))}, Rational(1, 100), 3, 8);
    CHECK(sampled.has_margin);
    CHECK(sampled.min_margin_sq > 0);

    CHECK_THROWS_AS(siegel_check({Scalar(0)}, Rational(-1), 3, 5), InputError);
    CHECK_THROWS_AS(siegel_check({Scalar(0), Scalar(0)}, Rational(1), 1, 5), InputError);
}

TEST_CASE("majorant norm basics") {
    set_real_precision(64);
    VarNames names{0, 2};
    Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
    CHECK(majorant_norm_exact(x1, Rational(3, 4)) == Rational(3, 4));
    CHECK(majorant_norm_exact(x1 + x2, Rational(1)) == Rational(2));
    CHECK(majorant_norm_exact(x1 - x2.scaled(Scalar(Rational(1, 2))), Rational(2)) ==
          Rational(3));
    Real approx = majorant_norm(x1 + x2, Real(1));
    CHECK(abs(approx - 2) < Real("1e-50"));
    CHECK_THROWS_AS(majorant_norm_exact(x1.scaled(Scalar::unit_i()), Rational(1)), InputError);
}

TEST_CASE("majorant norm is submultiplicative") {
    for (int t = 0; t < 25; ++t) {
        Poly f = random_poly(rng, 3, 0, 4, 6), g = random_poly(rng, 3, 0, 4, 6);
        std::uniform_int_distribution<long> num(1, 5);
        Rational rho(num(rng), num(rng));
        rho.canonicalize();
        CHECK(majorant_norm_exact(f * g, rho) <=
              majorant_norm_exact(f, rho) * majorant_norm_exact(g, rho));
    }
}

TEST_CASE("radius change inequality on truncated tails") {
    // |f|_{rho'} <= (rho'/rho)^q |f|_rho for f of order >= q
    for (int t = 0; t < 25; ++t) {
        int q = 2 + (t % 3);
        Poly f = random_poly(rng, 3, q, q + 3, 6);
        if (f.is_zero()) continue;
        Rational rho(3, 2), rho_prime(1, 2);
        Rational ratio_pow(1);
        for (int k = 0; k < q; ++k) ratio_pow *= rho_prime / rho;
        CHECK(majorant_norm_exact(f, rho_prime) <= ratio_pow * majorant_norm_exact(f, rho));
    }
}

TEST_CASE("radii schedule interleaves strictly") {
    std::vector<Scalar> w = {Scalar(Rational(1, 9)), Scalar(Rational(-1, 9)), Scalar(0)};
    DivisorProfile p = omega_sequence(w, 4);
    RadiiSchedule s = radii_schedule(p);
    REQUIRE(s.entries.size() == 4);
    // d = 1: r_1 = (omega_1/2)^{1/3} * rho_0
    Real expected_r1 = pow(p.omegas[0].value / 2, Real(1) / 3);
    CHECK(abs(s.entries[0].r - expected_r1) < Real("1e-40"));
    Real prev_rho = 1;
    for (size_t k = 0; k < s.entries.size(); ++k) {
        CHECK(s.entries[k].r < prev_rho);
        CHECK(s.entries[k].rho < s.entries[k].r);
        CHECK(s.entries[k].rho > 0);
        prev_rho = s.entries[k].rho;
    }
    CHECK(s.limit_estimate == s.entries.back().rho);
    CHECK(s.last_step > 0);

    // the asymptotic gap report is consistent with direct recomputation
    std::vector<RadiiLemmaEntry> lemma = radii_lemma_report(s);
    for (size_t k = 0; k < lemma.size(); ++k) {
        Real gap = rational_to_real(Rational(1, static_cast<long>(1l << lemma[k].d)));
        CHECK(lemma[k].a_holds == (s.entries[k].r - s.entries[k].rho > gap));
    }
}

TEST_CASE("zero-weight schedule: limit estimate stays positive") {
    DivisorProfile p = omega_sequence({Scalar(0), Scalar(0), Scalar(0)}, 4);
    RadiiSchedule s = radii_schedule(p);
    CHECK(s.limit_estimate > 0);
    // Cauchy differences shrink
    REQUIRE(s.entries.size() >= 3);
    Real d1 = s.entries[1].rho - s.entries[2].rho;
    Real d0 = s.entries[0].rho - s.entries[1].rho;
    CHECK(d1 < d0);
}

TEST_CASE("infeasible enumerations are rejected up front") {
    std::vector<Scalar> w(12, Scalar(0));
    CHECK_THROWS_AS(omega_sequence(w, 6), InputError);
}
