#pragma once

#include "pnf/cohomology.hpp"
#include "pnf/lie.hpp"

namespace pnf {

// (Pi_1, X) with [X, Pi_1] = -Pi_1 on a pure Lie-Poisson space (l = 0).
struct HomogeneousPair {
    ProblemSpace space;
    MultiVec X;
};

// Eigenvalue of Theta_r on the monomial with exponents `lambda`:
// r - 1 + sum_i lambda_i <alpha_i, h1>, where weights[i] = <alpha_i, h1>.
Scalar theta_eigenvalue(const Monomial& lambda, const std::vector<Scalar>& weights, int r);

struct ResonanceWitness {
    int degree = 0;
    Monomial lambda;
};

struct NonresonanceReport {
    bool nonresonant = true;
    std::vector<ResonanceWitness> resonances;
    unsigned long long scanned = 0;
};

// Scans every lambda with 2 <= |lambda| <= N for vanishing Theta eigenvalues.
NonresonanceReport check_nonresonance(const std::vector<Scalar>& weights, int N);

enum class Schedule { BlockDoubling, DegreeByDegree };

struct DegreeResidual {
    int degree = 0;
    bool zero = true;
    Rational max_abs2;  // largest squared coefficient modulus in the residual
    size_t terms = 0;
};

struct DivisorLogEntry {
    int degree = 0;
    Monomial argmin;
    Scalar value;  // Theta eigenvalue of smallest modulus at this degree
};

struct BlockLog {
    int lo = 0, hi = 0;
    bool skipped = false;  // no work at this block
};

struct LinearizationResult {
    CoordMap map;             // pushing X forward by `map` gives linear_field
    MultiVec linear_field;    // I + X_{h1}
    Poly h1;
    std::vector<DegreeResidual> residual_by_degree;
    std::vector<DivisorLogEntry> divisor_log;
    std::vector<BlockLog> blocks;
    bool map_preserves_pi = false;    // Jacobian identity through N
    bool map_transports_field = false;  // map carries X to linear_field through N
    bool success = false;
};

// Truncated formal linearization of a homogeneous pair. Throws DomainError
// on resonance (with the witness monomial), when h1 leaves the Cartan
// subalgebra, or when the Hamiltonian recovery fails.
LinearizationResult linearize(const HomogeneousPair& pair, Schedule schedule);

}  // namespace pnf
