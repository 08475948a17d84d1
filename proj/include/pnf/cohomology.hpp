#pragma once

#include "pnf/lie.hpp"
#include "pnf/multivec.hpp"

namespace pnf {

// Solves -[h, Pi] = Y through degree N for a Poisson vector field Y on the
// product space (first Poisson cohomology is trivial there).
//
// The symplectic directions are handled by an explicit primitive of the
// closed 1-form attached to Y; the transverse Lie-Poisson block by an exact
// per-degree linear solve, blocked by root weight. Underdetermined degrees
// (Casimir directions) take the graded-lex minimal-support solution, and h is
// normalized to have zero constant term.
//
// Throws DomainError("not-hamiltonian") with the offending degree when no
// solution exists at some degree.
Poly recover_hamiltonian(const MultiVec& Y, const ProblemSpace& space, int N);

}  // namespace pnf
