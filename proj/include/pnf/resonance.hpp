#pragma once

#include <gmpxx.h>

#include <vector>

#include "pnf/multivec.hpp"

namespace pnf {

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<IntVec>;

// Canonical row Hermite normal form of the lattice spanned by the rows of A:
// positive pivots, entries above each pivot reduced into [0, pivot), zero
// rows removed. The result is a unique basis of the row lattice.
IntMat hnf_rows(IntMat A);

// Basis (rows, in canonical HNF) of the integer kernel {u : A u = 0}.
IntMat integer_kernel(const IntMat& A, int ncols);

// Resonance lattice R = {u : <(-gamma, gamma, alpha), u> = 0}, its
// annihilator Q, the toric degree rank(Q), and the diagonal torus generators.
struct ResonanceData {
    int l = 0;
    int m = 0;
    IntMat R_basis;
    IntMat Q_basis;
    int toric_degree = 0;

    int n() const { return 2 * l + m; }
};

// gamma has length l, alpha length m; entries may be Gaussian rational (the
// real and imaginary parts contribute separate integer constraints).
ResonanceData resonance_lattice(const std::vector<Scalar>& gamma,
                                const std::vector<Scalar>& alpha);

// Z_k = sum_j rho^(k)_j x_j d/dx_j + ... : one diagonal linear field per
// Q-basis row.
std::vector<MultiVec> toric_generators(const ResonanceData& data);

// Monomials of total degree 1..N lying in R (zero ss_eigenvalue), in
// ascending graded-lex order. Membership is tested against Q_basis, an
// integer-only route independent of the eigenvalue arithmetic.
std::vector<Monomial> resonant_monomials(const ResonanceData& data, int N);

}  // namespace pnf
