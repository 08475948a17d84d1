#include "pnf/lie.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace pnf {

bool LieAlgebraData::is_real() const {
    for (const Scalar& s : c)
        if (!s.is_real()) return false;
    for (const auto& w : weights)
        for (const Scalar& s : w)
            if (!s.is_real()) return false;
    return true;
}

ValidationReport lie_validate(const LieAlgebraData& data) {
    ValidationReport report;
    int m = data.dim;
    auto witness_ij = [](int i, int j, int k) {
        std::ostringstream os;
        os << "(i,j,k)=(" << i + 1 << "," << j + 1 << "," << k + 1 << ")";
        return os.str();
    };

    ValidationCheck anti{"antisymmetry", true, ""};
    for (int i = 0; i < m && anti.pass; ++i)
        for (int j = 0; j < m && anti.pass; ++j)
            for (int k = 0; k < m; ++k)
                if (data.cst(i, j, k) != -data.cst(j, i, k)) {
                    anti.pass = false;
                    anti.witness = witness_ij(i, j, k);
                    break;
                }
    report.checks.push_back(anti);

    ValidationCheck jacobi{"jacobi", true, ""};
    for (int i = 0; i < m && jacobi.pass; ++i)
        for (int j = 0; j < m && jacobi.pass; ++j)
            for (int p = 0; p < m && jacobi.pass; ++p)
                for (int q = 0; q < m; ++q) {
                    // [[z_i,z_j],z_p] + [[z_j,z_p],z_i] + [[z_p,z_i],z_j] = 0
                    Scalar sum;
                    for (int k = 0; k < m; ++k) {
                        sum += data.cst(i, j, k) * data.cst(k, p, q);
                        sum += data.cst(j, p, k) * data.cst(k, i, q);
                        sum += data.cst(p, i, k) * data.cst(k, j, q);
                    }
                    if (!sum.is_zero()) {
                        jacobi.pass = false;
                        jacobi.witness = witness_ij(i, j, p);
                        break;
                    }
                }
    report.checks.push_back(jacobi);

    ValidationCheck wt{"weight-consistency", true, ""};
    if (static_cast<int>(data.weights.size()) != m) {
        wt.pass = false;
        wt.witness = "weights table must have one row per coordinate";
    } else {
        for (int i = 0; i < m && wt.pass; ++i)
            if (static_cast<int>(data.weights[static_cast<size_t>(i)].size()) !=
                data.cartan_dim()) {
                wt.pass = false;
                wt.witness = "weight row length must equal the Cartan dimension";
            }
    }
    if (wt.pass) {
        for (int t = 0; t < data.cartan_dim() && wt.pass; ++t) {
            int ct = data.cartan[static_cast<size_t>(t)];
            for (int i = 0; i < m && wt.pass; ++i) {
                // [z_ct, z_i] must equal <alpha_i, e_t> z_i.
                for (int k = 0; k < m; ++k) {
                    Scalar expected =
                        (k == i) ? data.weights[static_cast<size_t>(i)][static_cast<size_t>(t)]
                                 : Scalar();
                    if (data.cst(ct, i, k) != expected) {
                        wt.pass = false;
                        std::ostringstream os;
                        os << "[cartan " << ct + 1 << ", z" << i + 1 << "] is not diagonal";
                        wt.witness = os.str();
                        break;
                    }
                }
            }
        }
        for (int i : data.cartan)
            for (const Scalar& s : data.weights[static_cast<size_t>(i)])
                if (!s.is_zero()) {
                    wt.pass = false;
                    wt.witness = "Cartan coordinates must carry zero weight";
                }
    }
    report.checks.push_back(wt);
    return report;
}

namespace {

// Expands [A,B] of explicit matrices in a given basis; used to build the
// sl(3) table exactly instead of hardcoding 512 constants.
using Mat3 = std::array<std::array<long, 3>, 3>;

Mat3 commutator(const Mat3& A, const Mat3& B) {
    Mat3 C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long v = 0;
            for (int k = 0; k < 3; ++k) v += A[i][k] * B[k][j] - B[i][k] * A[k][j];
            C[i][j] = v;
        }
    return C;
}

Mat3 unit(int i, int j) {
    Mat3 M{};
    M[i][j] = 1;
    return M;
}

}  // namespace

LieAlgebraData lie_sl2() {
    LieAlgebraData d;
    d.name = "sl2";
    d.dim = 3;
    d.c.assign(27, Scalar());
    auto set = [&](int i, int j, int k, long v) {
        d.cst(i, j, k) = Scalar(v);
        d.cst(j, i, k) = Scalar(-v);
    };
    // z1, z2 span the root spaces of alpha, -alpha; z3 spans the Cartan part.
    set(2, 0, 0, 2);   // [z3,z1] = 2 z1
    set(2, 1, 1, -2);  // [z3,z2] = -2 z2
    set(0, 1, 2, 1);   // [z1,z2] = z3
    d.cartan = {2};
    d.weights = {{Scalar(2)}, {Scalar(-2)}, {Scalar(0)}};
    return d;
}

LieAlgebraData lie_sl3() {
    LieAlgebraData d;
    d.name = "sl3";
    d.dim = 8;
    d.c.assign(8 * 8 * 8, Scalar());
    // Root labeling with alpha1 + alpha2 + alpha3 = 0, so the resonance
    // relations read a1-b1 = a2-b2 = a3-b3 on the root-vector exponents.
    // Coordinates: z1..z3 root vectors of alpha1..alpha3, z4..z6 of the
    // opposite roots, z7,z8 the Cartan part.
    std::array<Mat3, 8> basis = {
        unit(0, 1),  // alpha1 = e1 - e2
        unit(1, 2),  // alpha2 = e2 - e3
        unit(2, 0),  // alpha3 = e3 - e1
        unit(1, 0), unit(2, 1), unit(0, 2),
        Mat3{{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}},  // H1
        Mat3{{{0, 0, 0}, {0, 1, 0}, {0, 0, -1}}},  // H2
    };
    // Expand a traceless matrix in the basis: off-diagonal entries map to the
    // six root vectors, the diagonal (d1,d2,d3) to d1*H1 - d3*H2.
    auto expand = [&](const Mat3& M, int i, int j) {
        std::array<long, 8> coeffs{};
        coeffs[0] = M[0][1];
        coeffs[1] = M[1][2];
        coeffs[2] = M[2][0];
        coeffs[3] = M[1][0];
        coeffs[4] = M[2][1];
        coeffs[5] = M[0][2];
        coeffs[6] = M[0][0];
        coeffs[7] = -M[2][2];
        for (int k = 0; k < 8; ++k) d.cst(i, j, k) = Scalar(coeffs[static_cast<size_t>(k)]);
    };
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            expand(commutator(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]), i,
                   j);
    d.cartan = {6, 7};
    // <alpha_i, a*H1 + b*H2>: alpha1 -> 2a-b, alpha2 -> 2b-a, alpha3 -> -a-b.
    d.weights = {{Scalar(2), Scalar(-1)}, {Scalar(-1), Scalar(2)}, {Scalar(-1), Scalar(-1)},
                 {Scalar(-2), Scalar(1)}, {Scalar(1), Scalar(-2)}, {Scalar(1), Scalar(1)},
                 {Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0)}};
    return d;
}

LieAlgebraData lie_so3() {
    LieAlgebraData d;
    d.name = "so3";
    d.dim = 3;
    d.c.assign(27, Scalar());
    auto set = [&](int i, int j, int k, long v) {
        d.cst(i, j, k) = Scalar(v);
        d.cst(j, i, k) = Scalar(-v);
    };
    set(0, 1, 2, 1);  // [z1,z2] = z3, cyclic
    set(1, 2, 0, 1);
    set(2, 0, 1, 1);
    // No coordinate acts diagonally over Q, so the builtin ships without
    // Cartan data; pipelines needing a nonzero Cartan element reject it.
    d.cartan = {};
    d.weights = {{}, {}, {}};
    return d;
}

std::optional<LieAlgebraData> lie_builtin(const std::string& name) {
    if (name == "sl2") return lie_sl2();
    if (name == "sl3") return lie_sl3();
    if (name == "so3") return lie_so3();
    return std::nullopt;
}

void ProblemSpace::validate() const {
    if (l < 0 || algebra.dim < 0 || N < 0)
        throw InputError("bad-space", "l, m and N must be nonnegative");
    ValidationReport r = lie_validate(algebra);
    if (!r.all_pass()) {
        std::string detail;
        for (const auto& c : r.checks)
            if (!c.pass) detail += c.name + " (" + c.witness + "); ";
        throw DomainError("invalid-algebra", "Lie algebra validation failed: " + detail);
    }
    if (field == Field::Q && !algebra.is_real())
        throw InputError("field-mismatch", "algebra data has imaginary parts but field is Q");
}

MultiVec lie_poisson(const LieAlgebraData& data) {
    ValidationReport r = lie_validate(data);
    if (!r.all_pass())
        throw DomainError("invalid-algebra", "structure constants failed validation");
    int m = data.dim;
    MultiVec pi(m, 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Poly entry(m);
            for (int k = 0; k < m; ++k) {
                const Scalar& v = data.cst(i, j, k);
                if (!v.is_zero()) entry += Poly::variable(m, k).scaled(v);
            }
            pi.add_component({i, j}, entry);
        }
    return pi;
}

MultiVec product_poisson(const ProblemSpace& space) {
    space.validate();
    int n = space.n(), l = space.l, m = space.m();
    MultiVec pi(n, 2);
    for (int i = 0; i < l; ++i)
        pi.add_component({i, l + i}, Poly::constant(n, Scalar(1)));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Poly entry(n);
            for (int k = 0; k < m; ++k) {
                const Scalar& v = space.algebra.cst(i, j, k);
                if (!v.is_zero()) entry += Poly::variable(n, 2 * l + k).scaled(v);
            }
            pi.add_component({2 * l + i, 2 * l + j}, entry);
        }
    return pi;
}

std::vector<Scalar> cartan_weights(const ProblemSpace& space, const Poly& h1) {
    int l = space.l, m = space.m();
    if (h1.nvars() != space.n())
        throw InputError("dimension-mismatch", "h1 must live on the ambient space");
    if (!h1.is_zero() && (h1.min_degree() < 1 || h1.degree() > 1))
        throw DomainError("h1-not-cartan", "h1 must be a linear polynomial");
    // Coefficients per Cartan coordinate; anything else in the support is an
    // error (the semisimplicity hypothesis on h1).
    std::vector<Scalar> coeff(space.algebra.cartan.size());
    for (const auto& [mono, c] : h1.terms()) {
        int var = -1;
        for (int k = 0; k < space.n(); ++k)
            if (mono.e[static_cast<size_t>(k)] == 1) var = k;
        int zi = var - 2 * l;
        auto it = std::find(space.algebra.cartan.begin(), space.algebra.cartan.end(), zi);
        if (zi < 0 || it == space.algebra.cartan.end())
            throw DomainError("h1-not-cartan",
                              "h1 is supported outside the configured Cartan coordinates");
        coeff[static_cast<size_t>(it - space.algebra.cartan.begin())] = c;
    }
    std::vector<Scalar> w(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        Scalar v;
        for (size_t t = 0; t < coeff.size(); ++t)
            v += coeff[t] * space.algebra.weights[static_cast<size_t>(i)][t];
        w[static_cast<size_t>(i)] = v;
    }
    return w;
}

}  // namespace pnf
