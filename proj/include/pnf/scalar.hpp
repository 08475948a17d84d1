#pragma once

#include <gmpxx.h>

#include <string>

#include "pnf/errors.hpp"

namespace pnf {

using Rational = mpq_class;

enum class Field { Q, Qi };

// Element of Q(i): re + im*i with exact rational parts. Over Q the imaginary
// part is identically zero; the pipelines assert this where the field tag
// demands it.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    // Squared modulus re^2 + im^2, always an exact rational.
    Rational abs2() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.im == 0 && b.im == 0) return Scalar(a.re * b.re);
        return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw DomainError("division-by-zero", "scalar division by zero");
        if (b.im == 0) return Scalar(a.re / b.re, a.im / b.re);
        Rational n = b.abs2();
        return Scalar((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order (real part, then imaginary part); used only for
    // deterministic containers, no analytic meaning over Q(i).
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }

    std::string str() const;
};

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline std::string Scalar::str() const {
    if (im == 0) return re.get_str();
    Rational im_abs(abs(im));
    std::string s;
    if (re != 0) {
        s = re.get_str();
        s += (im > 0) ? "+" : "-";
        s += im_abs.get_str();
    } else {
        if (im < 0) s += "-";
        s += im_abs.get_str();
    }
    s += "*i";
    return s;
}

}  // namespace pnf
