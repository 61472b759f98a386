#pragma once

#include <map>
#include <string>

#include "gwpt/rational.hpp"
#include "gwpt/u_series.hpp"

namespace gwpt {

// Rational form in q of the shape
//
//     ( sum_h c_h (-q)^{h/2} ) * prod_{(a,e)} (1 - (-q)^a)^{-e}.
//
// Half-integer exponents live on the symbol (-q), never on q, so the
// change-of-variables prefactor (-q)^{-d/2} is always representable. The
// numerator map is keyed by h (twice the (-q)-exponent); a denominator entry
// (a, e) stands for (1 - (-q)^a)^{-e} with a, e >= 1.
class QForm {
  public:
    QForm() = default;

    static QForm zero() { return QForm(); }
    // c * (-q)^{h/2}
    static QForm half_monomial(long h, const Rational &c);
    // c * q^k  (stored as (-1)^k c * (-q)^k)
    static QForm q_monomial(long k, const Rational &c);

    const std::map<long, Rational> &numerator() const { return num_; }
    const std::map<long, long> &denominator_factors() const { return den_; }

    bool is_zero() const { return num_.empty(); }

    QForm operator+(const QForm &o) const;  // defined only for equal denominators
    QForm operator*(const QForm &o) const;
    QForm operator-() const;
    QForm scale(const Rational &c) const;
    QForm shift_half(long h) const;  // multiply by (-q)^{h/2}
    QForm with_denominator_factor(long a, long e) const;

    // Cancel denominator factors that divide the numerator exactly.
    QForm reduce() const;
    bool is_laurent_polynomial() const { return reduce().den_.empty(); }

    // Equality of reduced representations.
    bool operator==(const QForm &o) const;
    bool operator!=(const QForm &o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    void add_term(long h, const Rational &c);

    std::map<long, Rational> num_;
    std::map<long, long> den_;

    friend TruncatedULaurent substitute_q_to_u(const QForm &f, long order);
};

// The change of variables q = -e^{iu}: each (-q)^{h/2} becomes e^{ihu/2} and
// each denominator factor is expanded through series_inverse. The result is
// exact to `order`.
TruncatedULaurent substitute_q_to_u(const QForm &f, long order);

}  // namespace gwpt
