#pragma once

#include "pnf/lie.hpp"
#include "pnf/matrix.hpp"

namespace pnf {

// Hamiltonian normalization input on (K^{2l+m}, Pi_symp + Pi_g). gamma are
// the symplectic frequencies (h2 = sum gamma_j x_j y_j), h1 a Cartan element
// of the transverse algebra; together they must be the semisimple part of the
// linear part of X_H (the remainders must be nilpotent).
struct BirkhoffInput {
    ProblemSpace space;
    Poly H;
    std::vector<Scalar> gamma;
    Poly h1;
};

// X_f = X_f^symp + X_f^g: the two summands of the Hamiltonian field coming
// from the symplectic and transverse parts of Pi.
std::pair<MultiVec, MultiVec> split_hamiltonian_field(const Poly& f, const ProblemSpace& space);

// Bracket eigenvalue {h1+h2, x^l y^m z^n} / (x^l y^m z^n) =
// <gamma, mu - lambda> + <alpha, nu>.
Scalar ss_eigenvalue(const Monomial& mono, const std::vector<Scalar>& gamma,
                     const std::vector<Scalar>& alpha, int l);

// f = {H_ss, K} + K_tilde with K free of resonant monomials and K_tilde
// exactly the zero-eigenvalue part.
std::pair<Poly, Poly> resonant_split(const Poly& f, const std::vector<Scalar>& gamma,
                                     const std::vector<Scalar>& alpha, int l);

struct StageLog {
    int stage = 0;
    int iterations = 0;        // nilpotent-correction rounds actually applied
    bool lower_stages_intact = true;
};

struct BirkhoffResult {
    CoordMap map;       // H_normalized = H o map; map preserves Pi through N
    Poly H_normalized;
    Poly H_ss;          // h1 + h2
    Poly residual;      // {H_normalized, H_ss} through N (zero on success)
    std::vector<StageLog> loop_log;
    bool success = false;
};

// Stagewise Poincare-Birkhoff normalization. Throws DomainError when the
// declared (gamma, h1) are inconsistent with the linear part (nilpotency or
// commutation failure) or when a nilpotent loop exceeds the (n+1) bound.
BirkhoffResult birkhoff_normalize(const BirkhoffInput& input);

struct JordanChevalley {
    Mat S;      // semisimple part
    Mat Npart;  // nilpotent part, commuting with S
    std::vector<Scalar> eigenvalues;  // distinct eigenvalues, sorted
};

// Additive Jordan-Chevalley decomposition by Newton iteration on the
// squarefree part of the characteristic polynomial; independent of the
// normalization pipeline. Throws DomainError("nonsplit-charpoly") when the
// eigenvalues do not lie in Q(i).
JordanChevalley semisimple_part_oracle(const Mat& L);

}  // namespace pnf
