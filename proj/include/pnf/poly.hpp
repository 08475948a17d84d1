#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pnf/errors.hpp"
#include "pnf/monomial.hpp"
#include "pnf/scalar.hpp"

namespace pnf {

// Coordinate naming for the textual polynomial grammar. The ambient space is
// K^{2l+m} with coordinates ordered x1..xl, y1..yl, z1..zm. When l = 0 the
// parser also accepts u1..um as aliases for z1..zm.
struct VarNames {
    int l = 0;
    int m = 0;

    int n() const { return 2 * l + m; }
    std::string name(int idx) const;
    // Returns the coordinate index for a token like "x2" / "z3" / "u1",
    // or -1 if the token is not a coordinate of this space.
    int index_of(const std::string& token) const;
};

// Sparse multivariate polynomial over Q(i) in canonical form: terms sorted in
// ascending graded-lex order, no zero coefficients stored.
class Poly {
public:
    using Term = std::pair<Monomial, Scalar>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(int nvars, const Scalar& c);
    static Poly variable(int nvars, int i);
    static Poly monomial(int nvars, Monomial m, const Scalar& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.back().first.degree(); }
    int min_degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }

    Scalar coeff(const Monomial& m) const;
    Scalar constant_term() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const Scalar& c) const;

    // Builder entry point: accumulates c * m, keeping canonical form.
    void add_term(const Monomial& m, const Scalar& c);

    std::string str(const VarNames& names) const;

private:
    int nvars_;
    std::vector<Term> terms_;

    friend Poly poly_mul_trunc(const Poly& a, const Poly& b, int max_degree);
    static Poly from_unsorted(int nvars, std::vector<Term> terms);
};

// Exact product truncated at total degree `max_degree` (pass a negative value
// for no truncation). Pipelines always truncate eagerly at the configured N.
Poly poly_mul_trunc(const Poly& a, const Poly& b, int max_degree);

// Homogeneous part of total degree r.
Poly graded_component(const Poly& f, int r);

// Part of degree p in the 2l symplectic coordinates and q in the transverse
// ones. Throws InputError when the split is inconsistent with f.nvars().
Poly bidegree_component(const Poly& f, int p, int q, int l);

// Degrees of f in the (x,y)-block and z-block for a given split.
std::pair<int, int> bidegree_of(const Monomial& m, int l);

// Drop all terms of total degree > N.
Poly truncate(const Poly& f, int N);

// Partial derivative with respect to coordinate i.
Poly derivative(const Poly& f, int i);

// Substitute images[i] for coordinate i, truncating at max_degree (negative
// for exact). Every image must share a common nvars (the target space).
Poly substitute(const Poly& f, const std::vector<Poly>& images, int max_degree);

// Textual grammar (see README): terms like "3/2*x1^2*z3 - 1*y1*z2".
Poly parse_poly(const std::string& text, const VarNames& names);
Scalar parse_scalar(const std::string& text);

}  // namespace pnf
