#pragma once

#include <vector>

#include "pnf/scalar.hpp"

namespace pnf {

// Dense exact matrix over Q(i). Small dimensions only (linear parts of fields,
// per-weight solve blocks), so plain Gaussian elimination is enough.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Scalar> a;  // row-major

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Scalar& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Scalar& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);

    bool is_zero() const;
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

Mat mat_add(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_scale(const Mat& x, const Scalar& c);
Mat mat_pow(const Mat& x, int k);

Scalar mat_det(Mat x);
// Throws DomainError("singular-matrix") when not invertible.
Mat mat_inverse(const Mat& x);

bool mat_is_nilpotent(const Mat& x);

// Characteristic polynomial coefficients c_0..c_n with
// det(tI - X) = sum_k c_k t^k (monic: c_n = 1). Faddeev-LeVerrier.
std::vector<Scalar> charpoly(const Mat& x);

// Evaluate a polynomial (coefficients low-to-high) at a matrix.
Mat mat_poly_eval(const std::vector<Scalar>& coeffs, const Mat& x);

// Solve A * x = b in the least-structure sense used by the cohomology solver:
// row-reduce, set free variables to zero (pivoting follows column order, so
// the result is deterministic). Returns false when inconsistent.
bool solve_linear(Mat A, std::vector<Scalar> b, std::vector<Scalar>& out);

}  // namespace pnf
