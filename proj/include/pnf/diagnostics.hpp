#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "pnf/monomial.hpp"
#include "pnf/poly.hpp"

namespace pnf {

// High-precision decimal scalar for the analytic diagnostics (logs and
// fractional powers); everything comparable exactly stays rational.
using Real = boost::multiprecision::mpfr_float;

// Sets the working precision (significant decimal digits) for subsequently
// created Real values. Returns the previous setting.
unsigned set_real_precision(unsigned digits);

Real rational_to_real(const Rational& q);

struct OmegaEntry {
    int d = 0;
    bool exact = false;      // true when all weights are real rationals
    Rational value_exact;    // meaningful when exact
    Rational value_sq;       // omega_d^2, always exact
    Real value;              // decimal value at the working precision
};

struct DivisorProfile {
    std::vector<OmegaEntry> omegas;
    std::vector<Real> bruno_partials;  // partial sums of -log(omega_d)/2^d
    int d_max = 0;
    unsigned long long budget = 0;      // lattice points the scan may visit
    unsigned long long enumerated = 0;  // lattice points actually visited
    bool exact = false;
};

// Number of lattice points a d_max scan ranges over (all shells through
// 2^{d_max+1}); the same bound omega_sequence checks before running.
unsigned long long omega_enumeration_budget(int nvars, int d_max);

// omega_d = min(1/(2d), min_{2 <= |lambda| <= 2^{d+1}} | |lambda|-1 +
// <weights, lambda> |). Throws DomainError("resonance") with the witness when
// a divisor vanishes, and InputError when the enumeration is infeasible.
DivisorProfile omega_sequence(const std::vector<Scalar>& weights, int d_max, int threads = 1,
                              unsigned precision_digits = 64);

struct SiegelViolation {
    Monomial lambda;
    Scalar divisor;
};

struct SiegelReport {
    std::vector<SiegelViolation> violations;
    bool has_margin = false;
    Rational min_margin_sq;  // min over the range of |divisor|^2 |lambda|^{2s}
    Monomial margin_argmin;
    unsigned long long scanned = 0;
};

// Checks | |lambda|-1 + <gamma,lambda> | >= c / |lambda|^s for
// 2 <= |lambda| <= lambda_max (the divisor at |lambda| <= 1 is identically
// degenerate). Exact comparisons via squared moduli.
SiegelReport siegel_check(const std::vector<Scalar>& gamma, const Rational& c, int s,
                          int lambda_max);

// |f|_rho = sum |a_lambda| rho^{|lambda|}.
Real majorant_norm(const Poly& f, const Real& rho);
// Exact variant; requires real coefficients and rational rho.
Rational majorant_norm_exact(const Poly& f, const Rational& rho);

struct RadiiEntry {
    int d = 0;
    Real r;
    Real rho;
};

struct RadiiSchedule {
    std::vector<RadiiEntry> entries;  // rho_0 = 1 implicit
    Real limit_estimate;              // last rho_d; the limit R satisfies 0 < R <= this
    Real last_step;                   // rho_{d-1} - rho_d at the last step
};

// r_d = (omega_d / 2^d)^{1/(2^d+1)} rho_{d-1}, rho_d = (1 - 1/(d+1)^2) r_d.
// Requires a resonance-free profile.
RadiiSchedule radii_schedule(const DivisorProfile& profile, unsigned precision_digits = 64);

struct RadiiLemmaEntry {
    int d = 0;
    bool a_holds = false;  // r_d - rho_d > 1/2^d
    bool b_holds = false;  // rho_d - r_{d+1} > 1/2^d
};

// Where the asymptotic radii gaps already hold on the computed range.
std::vector<RadiiLemmaEntry> radii_lemma_report(const RadiiSchedule& schedule);

}  // namespace pnf
