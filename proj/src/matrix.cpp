#include "pnf/matrix.hpp"

#include "pnf/errors.hpp"

namespace pnf {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

bool Mat::is_zero() const {
    for (const Scalar& s : a)
        if (!s.is_zero()) return false;
    return true;
}

static void check_dims(bool ok) {
    if (!ok) throw InputError("dimension-mismatch", "matrix dimension mismatch");
}

Mat mat_add(const Mat& x, const Mat& y) {
    check_dims(x.rows == y.rows && x.cols == y.cols);
    Mat r = x;
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] += y.a[k];
    return r;
}

Mat mat_sub(const Mat& x, const Mat& y) {
    check_dims(x.rows == y.rows && x.cols == y.cols);
    Mat r = x;
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] -= y.a[k];
    return r;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    check_dims(x.cols == y.rows);
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Scalar& xv = x.at(i, k);
            if (xv.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                const Scalar& yv = y.at(k, j);
                if (!yv.is_zero()) r.at(i, j) += xv * yv;
            }
        }
    return r;
}

Mat mat_scale(const Mat& x, const Scalar& c) {
    Mat r = x;
    for (Scalar& s : r.a) s = s * c;
    return r;
}

Mat mat_pow(const Mat& x, int k) {
    check_dims(x.rows == x.cols);
    Mat r = Mat::identity(x.rows);
    for (int i = 0; i < k; ++i) r = mat_mul(r, x);
    return r;
}

Scalar mat_det(Mat x) {
    check_dims(x.rows == x.cols);
    int n = x.rows;
    Scalar det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!x.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) return Scalar(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(x.at(pivot, j), x.at(col, j));
            det = -det;
        }
        det *= x.at(col, col);
        Scalar inv = Scalar(1) / x.at(col, col);
        for (int row = col + 1; row < n; ++row) {
            Scalar f = x.at(row, col) * inv;
            if (f.is_zero()) continue;
            for (int j = col; j < n; ++j) x.at(row, j) -= f * x.at(col, j);
        }
    }
    return det;
}

Mat mat_inverse(const Mat& x) {
    check_dims(x.rows == x.cols);
    int n = x.rows;
    Mat aug = x;
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!aug.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw DomainError("singular-matrix", "matrix is not invertible");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(aug.at(pivot, j), aug.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Scalar d = Scalar(1) / aug.at(col, col);
        for (int j = 0; j < n; ++j) {
            aug.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            Scalar f = aug.at(row, col);
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                aug.at(row, j) -= f * aug.at(col, j);
                inv.at(row, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

bool mat_is_nilpotent(const Mat& x) {
    check_dims(x.rows == x.cols);
    Mat p = x;
    for (int k = 1; k <= x.rows; ++k) {
        if (p.is_zero()) return true;
        p = mat_mul(p, x);
    }
    return p.is_zero();
}

std::vector<Scalar> charpoly(const Mat& x) {
    check_dims(x.rows == x.cols);
    int n = x.rows;
    // Faddeev-LeVerrier: M_1 = X, c_{n-1} = -tr M_1, M_{k+1} = X(M_k + c I).
    std::vector<Scalar> c(static_cast<size_t>(n) + 1);
    c[static_cast<size_t>(n)] = Scalar(1);
    Mat M = x;
    for (int k = 1; k <= n; ++k) {
        Scalar tr;
        for (int i = 0; i < n; ++i) tr += M.at(i, i);
        Scalar ck = -(tr / Scalar(k));
        c[static_cast<size_t>(n - k)] = ck;
        if (k < n) {
            Mat shift = M;
            for (int i = 0; i < n; ++i) shift.at(i, i) += ck;
            M = mat_mul(x, shift);
        }
    }
    return c;
}

Mat mat_poly_eval(const std::vector<Scalar>& coeffs, const Mat& x) {
    check_dims(x.rows == x.cols);
    Mat r(x.rows, x.cols);
    for (size_t k = coeffs.size(); k-- > 0;) {
        r = mat_mul(r, x);
        for (int i = 0; i < x.rows; ++i) r.at(i, i) += coeffs[k];
    }
    return r;
}

bool solve_linear(Mat A, std::vector<Scalar> b, std::vector<Scalar>& out) {
    check_dims(static_cast<int>(b.size()) == A.rows);
    int rows = A.rows, cols = A.cols;
    std::vector<int> pivot_row_of_col(static_cast<size_t>(cols), -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int row = rank; row < rows; ++row)
            if (!A.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int j = col; j < cols; ++j) std::swap(A.at(pivot, j), A.at(rank, j));
            std::swap(b[static_cast<size_t>(pivot)], b[static_cast<size_t>(rank)]);
        }
        Scalar d = Scalar(1) / A.at(rank, col);
        for (int j = col; j < cols; ++j) A.at(rank, j) *= d;
        b[static_cast<size_t>(rank)] *= d;
        for (int row = 0; row < rows; ++row) {
            if (row == rank) continue;
            Scalar f = A.at(row, col);
            if (f.is_zero()) continue;
            for (int j = col; j < cols; ++j) A.at(row, j) -= f * A.at(rank, j);
            b[static_cast<size_t>(row)] -= f * b[static_cast<size_t>(rank)];
        }
        pivot_row_of_col[static_cast<size_t>(col)] = rank;
        ++rank;
    }
    for (int row = rank; row < rows; ++row)
        if (!b[static_cast<size_t>(row)].is_zero()) return false;
    out.assign(static_cast<size_t>(cols), Scalar());
    for (int col = 0; col < cols; ++col) {
        int row = pivot_row_of_col[static_cast<size_t>(col)];
        if (row >= 0) out[static_cast<size_t>(col)] = b[static_cast<size_t>(row)];
    }
    return true;
}

}  // namespace pnf
