#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace gwpt {

// Exact rational scalars. GMP keeps mpq_class canonical (lowest terms,
// positive denominator) as long as values are built through make_rational /
// arithmetic; raw string construction must canonicalize.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer &num, const Integer &den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline Rational parse_rational(const std::string &text) {
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational: " + text);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r) { return r.get_str(); }

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer pow_integer(const Integer &base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Element of Q(i). The field operations are exact; i^2 = -1.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r), im(0) {}

    static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational operator+(const GaussianRational &o) const {
        return {re + o.re, im + o.im};
    }
    GaussianRational operator-(const GaussianRational &o) const {
        return {re - o.re, im - o.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator*(const GaussianRational &o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational inverse() const {
        if (is_zero()) throw std::invalid_argument("inverse of zero");
        Rational n = re * re + im * im;
        return {re / n, -im / n};
    }
    GaussianRational operator/(const GaussianRational &o) const {
        return *this * o.inverse();
    }
    bool operator==(const GaussianRational &o) const {
        return re == o.re && im == o.im;
    }
    bool operator!=(const GaussianRational &o) const { return !(*this == o); }

    GaussianRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        GaussianRational acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }
};

// i^e for any integer e.
inline GaussianRational i_pow(long e) {
    long r = ((e % 4) + 4) % 4;
    switch (r) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::unit_i();
        case 2: return GaussianRational(-1);
        default: return -GaussianRational::unit_i();
    }
}

// Canonical atom used in series output: "a/b", "a/b i", "a/b + c/d i".
std::string to_string(const GaussianRational &z);

}  // namespace gwpt
