#include "pnf/multivec.hpp"

#include <algorithm>
#include <sstream>

namespace pnf {

MultiVec::MultiVec(int nvars, int grade) : nvars_(nvars), grade_(grade) {
    if (grade < 0) throw InputError("bad-grade", "multivector grade must be nonnegative");
}

MultiVec MultiVec::from_poly(const Poly& f) {
    MultiVec v(f.nvars(), 0);
    if (!f.is_zero()) v.comps_[{}] = f;
    return v;
}

MultiVec MultiVec::euler(int nvars) {
    MultiVec v(nvars, 1);
    for (int i = 0; i < nvars; ++i) v.add_component({i}, Poly::variable(nvars, i));
    return v;
}

Poly MultiVec::component(const std::vector<int>& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? Poly(nvars_) : it->second;
}

Poly MultiVec::as_poly() const {
    if (grade_ != 0) throw InputError("bad-grade", "as_poly requires grade 0");
    auto it = comps_.find({});
    return it == comps_.end() ? Poly(nvars_) : it->second;
}

void MultiVec::prune(const std::vector<int>& idx) {
    auto it = comps_.find(idx);
    if (it != comps_.end() && it->second.is_zero()) comps_.erase(it);
}

void MultiVec::add_component(std::vector<int> idx, const Poly& c) {
    if (static_cast<int>(idx.size()) != grade_)
        throw InputError("bad-grade", "index tuple length must equal the grade");
    if (c.is_zero()) return;
    if (c.nvars() != nvars_) throw InputError("dimension-mismatch", "component space mismatch");
    // Sort the tuple, tracking the permutation parity; repeats kill the term.
    bool negate = false;
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) return;
            if (idx[a] > idx[b]) {
                std::swap(idx[a], idx[b]);
                negate = !negate;
            }
        }
    for (int i : idx)
        if (i < 0 || i >= nvars_) throw InputError("bad-index", "component index out of range");
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(std::move(idx), negate ? -c : c);
    } else {
        it->second += negate ? -c : c;
        prune(it->first);
    }
}

MultiVec MultiVec::operator-() const {
    MultiVec r(nvars_, grade_);
    for (const auto& [idx, p] : comps_) r.comps_[idx] = -p;
    return r;
}

MultiVec operator+(const MultiVec& a, const MultiVec& b) {
    if (a.nvars_ != b.nvars_ || a.grade_ != b.grade_)
        throw InputError("dimension-mismatch", "multivector shape mismatch");
    MultiVec r = a;
    for (const auto& [idx, p] : b.comps_) {
        auto it = r.comps_.find(idx);
        if (it == r.comps_.end()) {
            r.comps_[idx] = p;
        } else {
            it->second += p;
            r.prune(idx);
        }
    }
    return r;
}

MultiVec operator-(const MultiVec& a, const MultiVec& b) { return a + (-b); }

MultiVec MultiVec::scaled(const Scalar& c) const {
    MultiVec r(nvars_, grade_);
    if (c.is_zero()) return r;
    for (const auto& [idx, p] : comps_) r.comps_[idx] = p.scaled(c);
    return r;
}

Poly MultiVec::apply(const Poly& f, int max_degree) const {
    if (grade_ != 1) throw InputError("bad-grade", "apply requires a vector field");
    Poly out(nvars_);
    for (const auto& [idx, p] : comps_)
        out += poly_mul_trunc(p, derivative(f, idx[0]), max_degree);
    return out;
}

int MultiVec::max_component_degree() const {
    int d = -1;
    for (const auto& [idx, p] : comps_) d = std::max(d, p.degree());
    return d;
}

int MultiVec::min_component_degree() const {
    int d = -1;
    for (const auto& [idx, p] : comps_)
        if (d < 0 || p.min_degree() < d) d = p.min_degree();
    return d;
}

MultiVec MultiVec::truncated(int N) const {
    MultiVec r(nvars_, grade_);
    for (const auto& [idx, p] : comps_) {
        Poly t = truncate(p, N);
        if (!t.is_zero()) r.comps_[idx] = std::move(t);
    }
    return r;
}

std::string MultiVec::str(const VarNames& names) const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [idx, p] : comps_) {
        if (!first) os << ", ";
        first = false;
        os << "(";
        for (size_t k = 0; k < idx.size(); ++k) {
            if (k) os << ",";
            os << idx[k] + 1;
        }
        os << "): " << p.str(names);
    }
    os << "]";
    return os.str();
}

namespace {

// sign of theta_S * theta_T as (-1)^{#inversions}; 0 when the tuples overlap.
int merge_sign(const std::vector<int>& s, const std::vector<int>& t, std::vector<int>& merged) {
    merged.clear();
    merged.reserve(s.size() + t.size());
    int inversions = 0;
    size_t a = 0, b = 0;
    while (a < s.size() && b < t.size()) {
        if (s[a] == t[b]) return 0;
        if (s[a] < t[b]) {
            merged.push_back(s[a++]);
        } else {
            // t[b] jumps over the remaining elements of s.
            inversions += static_cast<int>(s.size() - a);
            merged.push_back(t[b++]);
        }
    }
    while (a < s.size()) merged.push_back(s[a++]);
    while (b < t.size()) merged.push_back(t[b++]);
    return (inversions % 2 == 0) ? 1 : -1;
}

// P(A,B) = sum_i D_i(A) . d(B)/dz_i, where D_i removes theta_i from the right
// (sign (-1)^{|S|-1-pos}) and the product carries the theta merge sign.
MultiVec half_bracket(const MultiVec& a, const MultiVec& b, int N) {
    MultiVec out(a.nvars(), a.grade() + b.grade() - 1);
    std::vector<int> reduced, merged;
    for (const auto& [sa, pa] : a.components()) {
        for (size_t pos = 0; pos < sa.size(); ++pos) {
            int i = sa[pos];
            int dsign = ((sa.size() - 1 - pos) % 2 == 0) ? 1 : -1;
            reduced.clear();
            for (size_t k = 0; k < sa.size(); ++k)
                if (k != pos) reduced.push_back(sa[k]);
            for (const auto& [sb, pb] : b.components()) {
                Poly db = derivative(pb, i);
                if (db.is_zero()) continue;
                int msign = merge_sign(reduced, sb, merged);
                if (msign == 0) continue;
                Poly prod = poly_mul_trunc(pa, db, N);
                if (prod.is_zero()) continue;
                if (dsign * msign < 0) prod = -prod;
                out.add_component(merged, prod);
            }
        }
    }
    return out;
}

}  // namespace

MultiVec schouten(const MultiVec& a, const MultiVec& b, int N) {
    if (a.nvars() != b.nvars())
        throw InputError("dimension-mismatch", "multivector space mismatch");
    int p = a.grade(), q = b.grade();
    if (p + q - 1 < 0)
        throw DomainError("bad-grade", "schouten bracket of two functions is undefined");
    MultiVec lhs = half_bracket(a, b, N);
    MultiVec rhs = half_bracket(b, a, N);
    bool flip = ((p - 1) * (q - 1)) % 2 != 0;
    return flip ? lhs + rhs : lhs - rhs;
}

MultiVec hamiltonian_vf(const Poly& f, const MultiVec& pi, int N) {
    if (pi.grade() != 2) throw InputError("bad-grade", "Poisson tensor must have grade 2");
    return -schouten(MultiVec::from_poly(f), pi, N);
}

Poly poisson_bracket(const Poly& f, const Poly& g, const MultiVec& pi, int N) {
    return hamiltonian_vf(f, pi, N).apply(g, N);
}

Mat linear_part_matrix(const MultiVec& field) {
    if (field.grade() != 1) throw InputError("bad-grade", "linear part requires a vector field");
    int n = field.nvars();
    Mat L(n, n);
    for (const auto& [idx, p] : field.components()) {
        Poly lin = graded_component(p, 1);
        for (const auto& [m, c] : lin.terms()) {
            for (int j = 0; j < n; ++j)
                if (m.e[static_cast<size_t>(j)] == 1) L.at(idx[0], j) = c;
        }
    }
    return L;
}

namespace {

// Iteration cap for the adjoint exponential: legitimate series terminate in
// O(N^2) steps (each step raises total degree or lowers the symplectic
// bidegree); anything longer means a non-admissible generator.
int flow_iteration_cap(int N) { return (N + 2) * (N + 2); }

void check_flow_generator(const Poly& G) {
    if (!G.is_zero() && G.min_degree() < 2)
        throw DomainError("flow-divergence",
                          "flow generator must have zero constant and linear part");
}

}  // namespace

MultiVec flow_pushforward(const MultiVec& T, const Poly& G, const MultiVec& pi, int N) {
    check_flow_generator(G);
    MultiVec xg = hamiltonian_vf(G, pi, N);
    MultiVec result = T.truncated(N);
    MultiVec term = result;
    Scalar factorial(1);
    int cap = flow_iteration_cap(N);
    for (int k = 1; !term.is_zero(); ++k) {
        if (k > cap)
            throw DomainError("flow-divergence",
                              "adjoint series did not terminate at the truncation degree",
                              {{"degree", std::to_string(N)}});
        term = schouten(xg, term, N);
        factorial *= Scalar(k);
        result += term.scaled(Scalar(1) / factorial);
    }
    return result;
}

Poly flow_pullback_function(const Poly& f, const Poly& G, const MultiVec& pi, int N) {
    check_flow_generator(G);
    Poly result = truncate(f, N);
    Poly term = result;
    Scalar factorial(1);
    int cap = flow_iteration_cap(N);
    for (int k = 1; !term.is_zero(); ++k) {
        if (k > cap)
            throw DomainError("flow-divergence",
                              "adjoint series did not terminate at the truncation degree",
                              {{"degree", std::to_string(N)}});
        term = poisson_bracket(G, term, pi, N);
        factorial *= Scalar(k);
        result += term.scaled(Scalar(1) / factorial);
    }
    return result;
}

CoordMap CoordMap::identity(int nvars, int N) {
    CoordMap m;
    m.N = N;
    m.images.reserve(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i) m.images.push_back(Poly::variable(nvars, i));
    return m;
}

bool CoordMap::is_identity() const {
    for (int i = 0; i < nvars(); ++i)
        if (images[static_cast<size_t>(i)] != Poly::variable(nvars(), i)) return false;
    return true;
}

Mat CoordMap::linear_part() const {
    int n = nvars();
    Mat L(n, n);
    for (int i = 0; i < n; ++i) {
        Poly lin = graded_component(images[static_cast<size_t>(i)], 1);
        for (const auto& [m, c] : lin.terms())
            for (int j = 0; j < n; ++j)
                if (m.e[static_cast<size_t>(j)] == 1) L.at(i, j) = c;
    }
    return L;
}

void CoordMap::validate() const {
    for (const Poly& p : images) {
        if (p.nvars() != nvars())
            throw InputError("dimension-mismatch", "coordinate map images mismatch");
        if (!p.constant_term().is_zero())
            throw DomainError("bad-map", "coordinate images must vanish at the origin");
    }
    if (mat_det(linear_part()).is_zero())
        throw DomainError("bad-map", "coordinate map has a singular linear part");
}

std::string CoordMap::str(const VarNames& names) const {
    std::ostringstream os;
    for (int i = 0; i < nvars(); ++i) {
        if (i) os << "\n";
        os << names.name(i) << " -> " << images[static_cast<size_t>(i)].str(names);
    }
    return os.str();
}

CoordMap coordmap_compose(const CoordMap& outer, const CoordMap& inner) {
    if (outer.nvars() != inner.nvars() || outer.N != inner.N)
        throw InputError("dimension-mismatch", "coordinate maps are not composable");
    CoordMap r;
    r.N = outer.N;
    r.images.reserve(outer.images.size());
    for (const Poly& img : outer.images) r.images.push_back(substitute(img, inner.images, r.N));
    return r;
}

CoordMap flow_coordmap(const Poly& G, const MultiVec& pi, int N, int sign) {
    Poly gen = (sign >= 0) ? G : -G;
    CoordMap m;
    m.N = N;
    int n = pi.nvars();
    m.images.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        m.images.push_back(flow_pullback_function(Poly::variable(n, i), gen, pi, N));
    return m;
}

bool map_pushforward_matches(const MultiVec& x_in, const CoordMap& map, const MultiVec& x_out,
                             int N) {
    int n = map.nvars();
    for (int i = 0; i < n; ++i) {
        // (X_out)_i o phi  ==  sum_j dphi_i/dx_j (X_in)_j
        Poly lhs = substitute(truncate(x_out.component({i}), N), map.images, N);
        Poly rhs(n);
        for (int j = 0; j < n; ++j) {
            const Poly& xj = x_in.component({j});
            if (xj.is_zero()) continue;
            rhs += poly_mul_trunc(derivative(map.images[static_cast<size_t>(i)], j), xj, N);
        }
        if (truncate(lhs, N) != truncate(rhs, N)) return false;
    }
    return true;
}

bool map_preserves_bivector(const MultiVec& pi, const CoordMap& map, int N) {
    int n = map.nvars();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Poly lhs = substitute(truncate(pi.component({i, j}), N), map.images, N);
            Poly rhs(n);
            for (const auto& [idx, p] : pi.components()) {
                int k = idx[0], l = idx[1];
                // pi^{kl} (dphi_i/dx_k dphi_j/dx_l - dphi_i/dx_l dphi_j/dx_k)
                Poly jac =
                    poly_mul_trunc(derivative(map.images[static_cast<size_t>(i)], k),
                                   derivative(map.images[static_cast<size_t>(j)], l), N) -
                    poly_mul_trunc(derivative(map.images[static_cast<size_t>(i)], l),
                                   derivative(map.images[static_cast<size_t>(j)], k), N);
                rhs += poly_mul_trunc(p, jac, N);
            }
            if (truncate(lhs, N) != truncate(rhs, N)) return false;
        }
    return true;
}

}  // namespace pnf
