#pragma once

#include <map>
#include <string>
#include <vector>

#include "pnf/matrix.hpp"
#include "pnf/poly.hpp"

namespace pnf {

// Polynomial multivector field of fixed grade on K^n. Components are stored
// against strictly increasing index tuples; inserting through an arbitrary
// tuple resolves the antisymmetry sign at once, so equality is canonical.
// Grade 0 is a single polynomial (empty tuple).
class MultiVec {
public:
    MultiVec() : nvars_(0), grade_(0) {}
    MultiVec(int nvars, int grade);

    static MultiVec from_poly(const Poly& f);
    // The Euler field sum_i x_i d/dx_i.
    static MultiVec euler(int nvars);

    int nvars() const { return nvars_; }
    int grade() const { return grade_; }
    bool is_zero() const { return comps_.empty(); }

    const std::map<std::vector<int>, Poly>& components() const { return comps_; }
    // Component for a strictly increasing tuple (zero poly when absent).
    Poly component(const std::vector<int>& idx) const;
    Poly as_poly() const;  // grade 0 only

    // Accumulate c into the component of `idx` (any permutation, signs
    // resolved; repeated indices contribute nothing).
    void add_component(std::vector<int> idx, const Poly& c);

    MultiVec operator-() const;
    friend MultiVec operator+(const MultiVec& a, const MultiVec& b);
    friend MultiVec operator-(const MultiVec& a, const MultiVec& b);
    MultiVec& operator+=(const MultiVec& o) { return *this = *this + o; }
    MultiVec& operator-=(const MultiVec& o) { return *this = *this - o; }
    MultiVec scaled(const Scalar& c) const;

    friend bool operator==(const MultiVec& a, const MultiVec& b) {
        return a.nvars_ == b.nvars_ && a.grade_ == b.grade_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const MultiVec& a, const MultiVec& b) { return !(a == b); }

    // Apply a vector field to a function (grade 1 only).
    Poly apply(const Poly& f, int max_degree) const;

    int max_component_degree() const;  // -1 when zero
    int min_component_degree() const;

    MultiVec truncated(int N) const;

    std::string str(const VarNames& names) const;

private:
    int nvars_;
    int grade_;
    std::map<std::vector<int>, Poly> comps_;

    void prune(const std::vector<int>& idx);
};

// Schouten bracket, grade(a)+grade(b)-1, truncated at total degree N
// (negative N: exact). Graded antisymmetry and the graded Jacobi and Leibniz
// identities hold; the convention is pinned by [X,f] = X(f), [I,Pi1] = -Pi1
// and X_f = -[f,Pi] with X_f(g) = {f,g}.
MultiVec schouten(const MultiVec& a, const MultiVec& b, int N);

// X_f = -[f, Pi].
MultiVec hamiltonian_vf(const Poly& f, const MultiVec& pi, int N);

// {f,g} induced by Pi.
Poly poisson_bracket(const Poly& f, const Poly& g, const MultiVec& pi, int N);

// Linear part of a grade-1 field as a matrix (entry (i,j) = coefficient of
// x_j in component i).
Mat linear_part_matrix(const MultiVec& field);

// exp(ad_{X_G}) T = T + [X_G,T] + 1/2 [X_G,[X_G,T]] + ..., truncated at N.
// Throws DomainError("flow-divergence") if the series fails to terminate,
// which happens exactly when some adjoint step neither raises total degree
// nor makes progress (e.g. G with ord < 2, or a quadratic G on the
// symplectic block).
MultiVec flow_pushforward(const MultiVec& T, const Poly& G, const MultiVec& pi, int N);

// Same exponential applied to a function: f o (time-1 flow of X_G).
Poly flow_pullback_function(const Poly& f, const Poly& G, const MultiVec& pi, int N);

// Truncated polynomial coordinate change: images[i] = image of coordinate i,
// zero constant term, invertible linear part.
struct CoordMap {
    std::vector<Poly> images;
    int N = 0;

    static CoordMap identity(int nvars, int N);
    int nvars() const { return static_cast<int>(images.size()); }
    bool is_identity() const;
    Mat linear_part() const;
    void validate() const;  // throws DomainError on zero-constant/Jacobian violations

    std::string str(const VarNames& names) const;
};

// Substitution of inner images into outer images (the map outer o inner),
// truncated at the common N.
CoordMap coordmap_compose(const CoordMap& outer, const CoordMap& inner);

// Coordinate images of the time-1 flow of X_{sign*G}: x_i o exp(X_{sign*G}).
CoordMap flow_coordmap(const Poly& G, const MultiVec& pi, int N, int sign);

// Checks phi_* X_in = X_out through degree N without inverting phi, via
// X_out o phi = Dphi . X_in.
bool map_pushforward_matches(const MultiVec& x_in, const CoordMap& map, const MultiVec& x_out,
                             int N);

// Checks phi_* Pi = Pi through N via Pi^{ij} o phi = Dphi Pi Dphi^T.
bool map_preserves_bivector(const MultiVec& pi, const CoordMap& map, int N);

}  // namespace pnf
