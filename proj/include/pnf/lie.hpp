#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnf/multivec.hpp"

namespace pnf {

// Semisimple Lie algebra in a basis adapted to a root decomposition: each
// non-Cartan coordinate spans a root space and carries the root's weight as a
// linear functional on the chosen Cartan coordinates.
struct LieAlgebraData {
    std::string name;  // builtin tag or "custom"
    int dim = 0;
    // Structure constants c[i][j][k] with [z_i, z_j] = sum_k c_ij^k z_k.
    std::vector<Scalar> c;
    std::vector<int> cartan;  // sorted coordinate indices spanning the Cartan part
    // weights[i][t] = <alpha_i, e_t> for the t-th Cartan coordinate.
    std::vector<std::vector<Scalar>> weights;

    const Scalar& cst(int i, int j, int k) const {
        return c[(static_cast<size_t>(i) * dim + j) * dim + k];
    }
    Scalar& cst(int i, int j, int k) { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }

    int cartan_dim() const { return static_cast<int>(cartan.size()); }
    bool is_real() const;
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Antisymmetry, Jacobi, weight consistency (including zero weights on Cartan
// coordinates). Failures are report entries, never exceptions.
ValidationReport lie_validate(const LieAlgebraData& data);

// Builtins in root-adapted bases with rational constants.
LieAlgebraData lie_sl2();
LieAlgebraData lie_sl3();
LieAlgebraData lie_so3();
std::optional<LieAlgebraData> lie_builtin(const std::string& name);

enum class Field;  // from scalar.hpp

// Ambient space K^{2l+m} with truncation degree and coefficient field.
struct ProblemSpace {
    int l = 0;
    LieAlgebraData algebra;
    int N = 0;
    Field field = Field::Q;

    int m() const { return algebra.dim; }
    int n() const { return 2 * l + algebra.dim; }
    VarNames names() const { return VarNames{l, algebra.dim}; }
    void validate() const;  // throws on inconsistent data
};

// Linear Lie-Poisson bivector on K^m (requires lie_validate to pass).
MultiVec lie_poisson(const LieAlgebraData& data);

// Pi = sum_i d/dx_i ^ d/dy_i + Pi_g on K^{2l+m}.
MultiVec product_poisson(const ProblemSpace& space);

// Per-coordinate weights <alpha_i, h1> of a Cartan element h1 (a linear
// polynomial supported on the Cartan coordinates of the z-block). The
// returned vector has one entry per z-coordinate. Throws DomainError when h1
// is not Cartan-supported.
std::vector<Scalar> cartan_weights(const ProblemSpace& space, const Poly& h1);

}  // namespace pnf
