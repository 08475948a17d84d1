#include "pnf/resonance.hpp"

#include <algorithm>

#include "pnf/enumerate.hpp"
#include "pnf/errors.hpp"

namespace pnf {

IntMat hnf_rows(IntMat A) {
    A.erase(std::remove_if(A.begin(), A.end(),
                           [](const IntVec& row) {
                               return std::all_of(row.begin(), row.end(),
                                                  [](const mpz_class& v) { return v == 0; });
                           }),
            A.end());
    if (A.empty()) return A;
    size_t ncols = A.front().size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < ncols && pivot_row < A.size(); ++col) {
        // Reduce all rows below pivot_row to a single nonzero entry in col.
        for (;;) {
            size_t best = A.size();
            for (size_t r = pivot_row; r < A.size(); ++r) {
                if (A[r][col] == 0) continue;
                if (best == A.size() || abs(A[r][col]) < abs(A[best][col])) best = r;
            }
            if (best == A.size()) break;
            std::swap(A[pivot_row], A[best]);
            bool clean = true;
            for (size_t r = pivot_row + 1; r < A.size(); ++r) {
                if (A[r][col] == 0) continue;
                mpz_class f = A[r][col] / A[pivot_row][col];  // truncated division
                if (f != 0)
                    for (size_t j = 0; j < ncols; ++j) A[r][j] -= f * A[pivot_row][j];
                if (A[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (A[pivot_row][col] == 0) continue;
        if (A[pivot_row][col] < 0)
            for (size_t j = 0; j < ncols; ++j) A[pivot_row][j] = -A[pivot_row][j];
        // Reduce the entries above the pivot into [0, pivot).
        for (size_t r = 0; r < pivot_row; ++r) {
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), A[r][col].get_mpz_t(), A[pivot_row][col].get_mpz_t());
            if (f != 0)
                for (size_t j = 0; j < ncols; ++j) A[r][j] -= f * A[pivot_row][j];
        }
        ++pivot_row;
    }
    A.resize(pivot_row);
    return A;
}

IntMat integer_kernel(const IntMat& A, int ncols) {
    // Row-reduce [A^T | I]; rows whose left block vanishes give the kernel.
    size_t r = A.size();
    IntMat M(static_cast<size_t>(ncols), IntVec(r + static_cast<size_t>(ncols), 0));
    for (size_t j = 0; j < static_cast<size_t>(ncols); ++j) {
        for (size_t i = 0; i < r; ++i) M[j][i] = A[i][j];
        M[j][r + j] = 1;
    }
    // HNF over the left block only (augmented columns just come along).
    size_t pivot_row = 0;
    for (size_t col = 0; col < r && pivot_row < M.size(); ++col) {
        for (;;) {
            size_t best = M.size();
            for (size_t row = pivot_row; row < M.size(); ++row) {
                if (M[row][col] == 0) continue;
                if (best == M.size() || abs(M[row][col]) < abs(M[best][col])) best = row;
            }
            if (best == M.size()) break;
            std::swap(M[pivot_row], M[best]);
            bool clean = true;
            for (size_t row = pivot_row + 1; row < M.size(); ++row) {
                if (M[row][col] == 0) continue;
                mpz_class f = M[row][col] / M[pivot_row][col];
                if (f != 0)
                    for (size_t j = 0; j < M[row].size(); ++j) M[row][j] -= f * M[pivot_row][j];
                if (M[row][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (M[pivot_row][col] != 0) ++pivot_row;
    }
    IntMat kernel;
    for (size_t row = pivot_row; row < M.size(); ++row) {
        bool zero_left = true;
        for (size_t col = 0; col < r; ++col)
            if (M[row][col] != 0) {
                zero_left = false;
                break;
            }
        if (!zero_left)
            throw DomainError("internal", "kernel extraction left a nonzero image row");
        kernel.emplace_back(M[row].begin() + static_cast<long>(r), M[row].end());
    }
    return hnf_rows(std::move(kernel));
}

namespace {

// Integer constraint rows from a Q(i)-valued functional: real and imaginary
// parts separately, denominators cleared per row.
IntMat functional_rows(const std::vector<Scalar>& w) {
    IntMat rows;
    for (int part = 0; part < 2; ++part) {
        mpz_class lcm_den = 1;
        bool nonzero = false;
        for (const Scalar& s : w) {
            const Rational& q = part == 0 ? s.re : s.im;
            if (q != 0) nonzero = true;
            mpz_class den = q.get_den();
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
        }
        if (!nonzero) continue;
        IntVec row;
        row.reserve(w.size());
        for (const Scalar& s : w) {
            const Rational& q = part == 0 ? s.re : s.im;
            row.push_back(mpz_class(q.get_num() * (lcm_den / q.get_den())));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ResonanceData resonance_lattice(const std::vector<Scalar>& gamma,
                                const std::vector<Scalar>& alpha) {
    ResonanceData data;
    data.l = static_cast<int>(gamma.size());
    data.m = static_cast<int>(alpha.size());
    int n = data.n();

    std::vector<Scalar> w;
    w.reserve(static_cast<size_t>(n));
    for (const Scalar& g : gamma) w.push_back(-g);
    for (const Scalar& g : gamma) w.push_back(g);
    for (const Scalar& a : alpha) w.push_back(a);

    IntMat constraints = functional_rows(w);
    if (constraints.empty()) {
        // Everything resonant: R = Z^n.
        IntMat id(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        data.R_basis = id;
    } else {
        data.R_basis = integer_kernel(constraints, n);
    }
    data.Q_basis = data.R_basis.empty()
                       ? [&] {
                             IntMat id(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
                             for (int i = 0; i < n; ++i)
                                 id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
                             return id;
                         }()
                       : integer_kernel(data.R_basis, n);
    data.toric_degree = static_cast<int>(data.Q_basis.size());

    // Exactness checks on the construction.
    for (const IntVec& u : data.R_basis) {
        Scalar dot;
        for (int j = 0; j < n; ++j)
            dot += w[static_cast<size_t>(j)] * Scalar(Rational(u[static_cast<size_t>(j)]));
        if (!dot.is_zero())
            throw DomainError("internal", "resonance lattice basis fails the defining relation");
    }
    for (const IntVec& a : data.Q_basis)
        for (const IntVec& u : data.R_basis) {
            mpz_class dot = 0;
            for (int j = 0; j < n; ++j)
                dot += a[static_cast<size_t>(j)] * u[static_cast<size_t>(j)];
            if (dot != 0)
                throw DomainError("internal", "annihilator basis is not orthogonal to R");
        }
    if (static_cast<int>(data.R_basis.size()) + data.toric_degree != n)
        throw DomainError("internal", "rank(R) + rank(Q) must equal the dimension");
    return data;
}

std::vector<MultiVec> toric_generators(const ResonanceData& data) {
    std::vector<MultiVec> out;
    int n = data.n();
    for (const IntVec& rho : data.Q_basis) {
        MultiVec Z(n, 1);
        for (int j = 0; j < n; ++j) {
            if (rho[static_cast<size_t>(j)] == 0) continue;
            Z.add_component({j}, Poly::variable(n, j).scaled(
                                     Scalar(Rational(rho[static_cast<size_t>(j)]))));
        }
        out.push_back(std::move(Z));
    }
    return out;
}

std::vector<Monomial> resonant_monomials(const ResonanceData& data, int N) {
    std::vector<Monomial> out;
    int n = data.n();
    for (int r = 1; r <= N; ++r) {
        enumerate_degree(n, r, [&](const Monomial& m) {
            for (const IntVec& a : data.Q_basis) {
                mpz_class dot = 0;
                for (int j = 0; j < n; ++j)
                    dot += a[static_cast<size_t>(j)] *
                           static_cast<long>(m.e[static_cast<size_t>(j)]);
                if (dot != 0) return;
            }
            out.push_back(m);
        });
    }
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

}  // namespace pnf
