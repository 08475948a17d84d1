#include "pnf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace pnf {

std::string VarNames::name(int idx) const {
    std::ostringstream os;
    if (idx < l)
        os << 'x' << idx + 1;
    else if (idx < 2 * l)
        os << 'y' << idx - l + 1;
    else
        os << 'z' << idx - 2 * l + 1;
    return os.str();
}

int VarNames::index_of(const std::string& token) const {
    if (token.size() < 2) return -1;
    char head = token[0];
    int num = 0;
    for (size_t k = 1; k < token.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(token[k]))) return -1;
        num = num * 10 + (token[k] - '0');
    }
    if (num < 1) return -1;
    switch (head) {
        case 'x':
            return (num <= l) ? num - 1 : -1;
        case 'y':
            return (num <= l) ? l + num - 1 : -1;
        case 'z':
            return (num <= m) ? 2 * l + num - 1 : -1;
        case 'u':
            // Alias for the transverse block in the purely Lie-Poisson case.
            return (l == 0 && num <= m) ? num - 1 : -1;
        default:
            return -1;
    }
}

Poly Poly::constant(int nvars, const Scalar& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace_back(Monomial(nvars), c);
    return p;
}

Poly Poly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw InputError("bad-variable", "variable index out of range");
    Monomial m(nvars);
    m.e[static_cast<size_t>(i)] = 1;
    return monomial(nvars, m, Scalar(1));
}

Poly Poly::monomial(int nvars, Monomial m, const Scalar& c) {
    if (m.nvars() != nvars) throw InputError("bad-monomial", "monomial dimension mismatch");
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace_back(std::move(m), c);
    return p;
}

Scalar Poly::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) {
                                   return grlex_cmp(t.first, key) < 0;
                               });
    if (it != terms_.end() && it->first == m) return it->second;
    return Scalar();
}

Scalar Poly::constant_term() const {
    if (!terms_.empty() && terms_.front().first.degree() == 0) return terms_.front().second;
    return Scalar();
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.emplace_back(t.first, -t.second);
    return r;
}

static void check_same_space(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars())
        throw InputError("dimension-mismatch", "polynomials live on different spaces");
}

Poly operator+(const Poly& a, const Poly& b) {
    check_same_space(a, b);
    Poly r(a.nvars());
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        int c = grlex_cmp(ia->first, ib->first);
        if (c < 0) {
            r.terms_.push_back(*ia++);
        } else if (c > 0) {
            r.terms_.push_back(*ib++);
        } else {
            Scalar s = ia->second + ib->second;
            if (!s.is_zero()) r.terms_.emplace_back(ia->first, std::move(s));
            ++ia;
            ++ib;
        }
    }
    r.terms_.insert(r.terms_.end(), ia, a.terms_.end());
    r.terms_.insert(r.terms_.end(), ib, b.terms_.end());
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::from_unsorted(int nvars, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& s, const Term& t) { return grlex_cmp(s.first, t.first) < 0; });
    Poly r(nvars);
    r.terms_.reserve(terms.size());
    for (Term& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first)
            r.terms_.back().second += t.second;
        else
            r.terms_.push_back(std::move(t));
    }
    r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(),
                                  [](const Term& t) { return t.second.is_zero(); }),
                   r.terms_.end());
    return r;
}

Poly poly_mul_trunc(const Poly& a, const Poly& b, int max_degree) {
    check_same_space(a, b);
    Poly r(a.nvars());
    if (a.is_zero() || b.is_zero()) return r;
    std::unordered_map<Monomial, Scalar, MonomialHash> acc;
    acc.reserve(a.term_count() + b.term_count());
    for (const auto& [ma, ca] : a.terms()) {
        int da = ma.degree();
        if (max_degree >= 0 && da > max_degree) break;
        for (const auto& [mb, cb] : b.terms()) {
            if (max_degree >= 0 && da + mb.degree() > max_degree) break;  // b sorted by degree
            acc[ma * mb] += ca * cb;
        }
    }
    std::vector<Poly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) terms.emplace_back(m, std::move(c));
    return Poly::from_unsorted(a.nvars(), std::move(terms));
}

Poly operator*(const Poly& a, const Poly& b) { return poly_mul_trunc(a, b, -1); }

Poly Poly::scaled(const Scalar& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.emplace_back(t.first, t.second * c);
    return r;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    if (m.nvars() != nvars_) throw InputError("bad-monomial", "monomial dimension mismatch");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) {
                                   return grlex_cmp(t.first, key) < 0;
                               });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, Term(m, c));
    }
}

Poly graded_component(const Poly& f, int r) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms())
        if (m.degree() == r) out.add_term(m, c);
    return out;
}

std::pair<int, int> bidegree_of(const Monomial& m, int l) {
    int p = 0;
    for (int k = 0; k < 2 * l; ++k) p += static_cast<int>(m.e[static_cast<size_t>(k)]);
    return {p, m.degree() - p};
}

Poly bidegree_component(const Poly& f, int p, int q, int l) {
    if (2 * l > f.nvars())
        throw InputError("bad-split", "coordinate split exceeds the ambient dimension");
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        auto [mp, mq] = bidegree_of(m, l);
        if (mp == p && mq == q) out.add_term(m, c);
    }
    return out;
}

Poly truncate(const Poly& f, int N) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        if (m.degree() > N) break;
        out.add_term(m, c);
    }
    return out;
}

Poly derivative(const Poly& f, int i) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        uint32_t e = m.e[static_cast<size_t>(i)];
        if (e == 0) continue;
        Monomial d = m;
        d.e[static_cast<size_t>(i)] = e - 1;
        out.add_term(d, c * Scalar(static_cast<long>(e)));
    }
    return out;
}

Poly substitute(const Poly& f, const std::vector<Poly>& images, int max_degree) {
    if (static_cast<int>(images.size()) != f.nvars())
        throw InputError("bad-substitution", "one image polynomial required per coordinate");
    int target = images.empty() ? 0 : images.front().nvars();
    for (const Poly& g : images)
        if (g.nvars() != target)
            throw InputError("bad-substitution", "images live on different spaces");

    // Memoized powers of each image, truncated along the way.
    std::vector<std::vector<Poly>> powers(images.size());
    auto power = [&](size_t i, uint32_t k) -> const Poly& {
        auto& table = powers[i];
        if (table.empty()) table.push_back(Poly::constant(target, Scalar(1)));
        while (table.size() <= k)
            table.push_back(poly_mul_trunc(table.back(), images[i], max_degree));
        return table[k];
    };

    Poly out(target);
    for (const auto& [m, c] : f.terms()) {
        Poly term = Poly::constant(target, c);
        for (size_t i = 0; i < images.size() && !term.is_zero(); ++i) {
            if (m.e[i] == 0) continue;
            term = poly_mul_trunc(term, power(i, m.e[i]), max_degree);
        }
        out += term;
    }
    return out;
}

std::string Poly::str(const VarNames& names) const {
    if (terms_.empty()) return "0";
    if (names.n() != nvars_) throw InputError("bad-names", "naming scheme dimension mismatch");
    std::ostringstream os;
    bool first = true;
    // One printed term per nonzero real/imaginary coefficient part.
    auto emit = [&](const Rational& mag, bool negative, bool imaginary, const Monomial& m) {
        if (first) {
            if (negative) os << '-';
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        os << mag.get_str();
        if (imaginary) os << "*i";
        for (int k = 0; k < nvars_; ++k) {
            uint32_t e = m.e[static_cast<size_t>(k)];
            if (e == 0) continue;
            os << '*' << names.name(k);
            if (e > 1) os << '^' << e;
        }
    };
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (c.re != 0) emit(abs(c.re), c.re < 0, false, m);
        if (c.im != 0) emit(abs(c.im), c.im < 0, true, m);
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw InputError("parse-error",
                         what + " at position " + std::to_string(pos) + " in \"" + s + "\"");
    }

    std::string word() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos]))))
            ++pos;
        return s.substr(start, pos - start);
    }

    Rational number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        std::string num = s.substr(start, pos - start);
        if (accept('/')) {
            skip_ws();
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) fail("expected a denominator");
            std::string den = s.substr(dstart, pos - dstart);
            if (Rational(den) == 0) fail("zero denominator");
            Rational q(num + "/" + den);
            q.canonicalize();
            return q;
        }
        return Rational(num);
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const VarNames& names) {
    Poly out(names.n());
    Lexer lx(text);
    if (lx.done()) throw InputError("parse-error", "empty polynomial text");
    bool first = true;
    for (;;) {
        bool negative = false;
        if (first) {
            if (lx.accept('-'))
                negative = true;
            else
                lx.accept('+');
        } else if (lx.accept('+')) {
            negative = false;
        } else if (lx.accept('-')) {
            negative = true;
        } else if (lx.done()) {
            break;
        } else {
            lx.fail("expected '+' or '-'");
        }
        if (lx.done()) lx.fail("dangling sign");
        Scalar coeff(1);
        Monomial mono(names.n());
        for (;;) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= Scalar(lx.number());
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string w = lx.word();
                if (w == "i") {
                    coeff *= Scalar::unit_i();
                } else {
                    int idx = names.index_of(w);
                    if (idx < 0) lx.fail("unknown coordinate \"" + w + "\"");
                    uint32_t exp = 1;
                    if (lx.accept('^')) {
                        Rational e = lx.number();
                        if (e.get_den() != 1 || e < 0) lx.fail("bad exponent");
                        exp = static_cast<uint32_t>(e.get_num().get_ui());
                    }
                    mono.e[static_cast<size_t>(idx)] += exp;
                }
            } else {
                lx.fail("expected a coefficient or coordinate");
            }
            if (!lx.accept('*')) break;
        }
        if (negative) coeff = -coeff;
        out.add_term(mono, coeff);
        first = false;
    }
    return out;
}

Scalar parse_scalar(const std::string& text) {
    std::string t = text;
    // A scalar is a 0-variable polynomial; reuse the term grammar.
    VarNames names{0, 0};
    Poly p = parse_poly(t, names);
    return p.constant_term();
}

}  // namespace pnf
