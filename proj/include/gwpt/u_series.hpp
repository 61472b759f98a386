#pragma once

#include <optional>
#include <vector>

#include "gwpt/rational.hpp"

namespace gwpt {

// Truncated Laurent series in u over Q(i).
//
// A value represents  sum_{k=min_exponent}^{truncation_order} c_k u^k + O(u^{order+1}).
// Coefficients below min_exponent are known zeros; coefficients above
// truncation_order are unknown. Every operation computes the tightest sound
// truncation of its result, so precision loss is explicit, never silent.
class TruncatedULaurent {
  public:
    TruncatedULaurent(long min_exponent, std::vector<GaussianRational> coeffs);

    // Series with a single known term c*u^k; exact up to `order` (k <= order).
    static TruncatedULaurent monomial(long k, GaussianRational c, long order);
    static TruncatedULaurent zero(long order) { return monomial(0, GaussianRational(0), order); }
    static TruncatedULaurent one(long order) { return monomial(0, GaussianRational(1), order); }

    long min_exponent() const { return min_exp_; }
    long truncation_order() const { return min_exp_ + static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<GaussianRational> &coefficients() const { return coeffs_; }

    // Coefficient of u^k; zero below min_exponent, throws above truncation_order.
    const GaussianRational &coeff(long k) const;
    bool is_zero() const;                  // all known coefficients vanish
    std::optional<long> valuation() const; // exponent of lowest nonzero known coefficient

    TruncatedULaurent operator+(const TruncatedULaurent &o) const;
    TruncatedULaurent operator-(const TruncatedULaurent &o) const;
    TruncatedULaurent operator-() const;
    TruncatedULaurent scale(const GaussianRational &c) const;
    // Multiply by c*u^k; exact (shifts the known window).
    TruncatedULaurent shift_scale(long k, const GaussianRational &c) const;
    TruncatedULaurent truncate_to(long order) const;

    bool operator==(const TruncatedULaurent &o) const;

    std::string to_string() const;

  private:
    long min_exp_;
    std::vector<GaussianRational> coeffs_;
};

// Exact convolution. min = a.min + b.min; order = min(a.order + b.min, b.order + a.min).
TruncatedULaurent series_product(const TruncatedULaurent &a, const TruncatedULaurent &b);

// Multiplicative inverse as a Laurent series. The lowest nonzero known
// coefficient of `a` (at exponent v) becomes the pole datum: the result has
// min_exponent -v and truncation_order a.order - 2v. Rejects the zero series.
TruncatedULaurent series_inverse(const TruncatedULaurent &a);

// e^{c u} = sum_k (c u)^k / k!, exact to `order` >= 0.
TruncatedULaurent exp_series(const GaussianRational &c, long order);

// Coefficientwise comparison of two truncations of the same function.
struct SeriesAgreement {
    bool enough_overlap = false;  // known windows overlap in >= min_overlap exponents
    bool equal = false;
    std::optional<long> first_mismatch;
};

// Compares on [min(min_1, min_2), min(order_1, order_2)], zero-extending below
// each series' min_exponent. `min_overlap` counts exponents in
// [max(min_1,min_2), min(order_1,order_2)].
SeriesAgreement series_agree(const TruncatedULaurent &a, const TruncatedULaurent &b,
                             long min_overlap = 1);

}  // namespace gwpt
