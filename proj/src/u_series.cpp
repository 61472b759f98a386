#include "gwpt/u_series.hpp"

#include <algorithm>
#include <sstream>

namespace gwpt {

std::string to_string(const GaussianRational &z) {
    if (z.is_zero()) return "0";
    auto imag_part = [](const Rational &im) -> std::string {
        if (im == 1) return "i";
        if (im == -1) return "-i";
        return im.get_str() + " i";
    };
    if (z.im == 0) return z.re.get_str();
    if (z.re == 0) return imag_part(z.im);
    std::string s = z.re.get_str();
    if (z.im > 0)
        s += " + " + (z.im == 1 ? std::string("i") : z.im.get_str() + " i");
    else {
        Rational a = -z.im;
        s += " - " + (a == 1 ? std::string("i") : a.get_str() + " i");
    }
    return s;
}

TruncatedULaurent::TruncatedULaurent(long min_exponent, std::vector<GaussianRational> coeffs)
    : min_exp_(min_exponent), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("series needs at least one known coefficient");
}

TruncatedULaurent TruncatedULaurent::monomial(long k, GaussianRational c, long order) {
    if (order < k) throw std::invalid_argument("monomial order below its exponent");
    std::vector<GaussianRational> v(static_cast<size_t>(order - k + 1));
    v[0] = std::move(c);
    return TruncatedULaurent(k, std::move(v));
}

const GaussianRational &TruncatedULaurent::coeff(long k) const {
    static const GaussianRational zero_coeff;
    if (k < min_exp_) return zero_coeff;
    if (k > truncation_order())
        throw std::out_of_range("coefficient beyond truncation order");
    return coeffs_[static_cast<size_t>(k - min_exp_)];
}

bool TruncatedULaurent::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const GaussianRational &c) { return c.is_zero(); });
}

std::optional<long> TruncatedULaurent::valuation() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return min_exp_ + static_cast<long>(i);
    return std::nullopt;
}

TruncatedULaurent TruncatedULaurent::operator+(const TruncatedULaurent &o) const {
    long lo = std::min(min_exp_, o.min_exp_);
    long hi = std::min(truncation_order(), o.truncation_order());
    if (hi < lo) throw std::invalid_argument("sum has empty known window");
    std::vector<GaussianRational> v(static_cast<size_t>(hi - lo + 1));
    for (long k = lo; k <= hi; ++k) v[static_cast<size_t>(k - lo)] = coeff(k) + o.coeff(k);
    return TruncatedULaurent(lo, std::move(v));
}

TruncatedULaurent TruncatedULaurent::operator-(const TruncatedULaurent &o) const {
    return *this + (-o);
}

TruncatedULaurent TruncatedULaurent::operator-() const {
    std::vector<GaussianRational> v(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
    return TruncatedULaurent(min_exp_, std::move(v));
}

TruncatedULaurent TruncatedULaurent::scale(const GaussianRational &c) const {
    std::vector<GaussianRational> v(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] * c;
    return TruncatedULaurent(min_exp_, std::move(v));
}

TruncatedULaurent TruncatedULaurent::shift_scale(long k, const GaussianRational &c) const {
    auto s = scale(c);
    s.min_exp_ += k;
    return s;
}

TruncatedULaurent TruncatedULaurent::truncate_to(long order) const {
    if (order < min_exp_) throw std::invalid_argument("truncation below min exponent");
    if (order >= truncation_order()) return *this;
    std::vector<GaussianRational> v(coeffs_.begin(),
                                    coeffs_.begin() + (order - min_exp_ + 1));
    return TruncatedULaurent(min_exp_, std::move(v));
}

bool TruncatedULaurent::operator==(const TruncatedULaurent &o) const {
    if (truncation_order() != o.truncation_order()) return false;
    return series_agree(*this, o).equal;
}

TruncatedULaurent series_product(const TruncatedULaurent &a, const TruncatedULaurent &b) {
    long lo = a.min_exponent() + b.min_exponent();
    long hi = std::min(a.truncation_order() + b.min_exponent(),
                       b.truncation_order() + a.min_exponent());
    if (hi < lo) throw std::invalid_argument("product has empty known window");
    std::vector<GaussianRational> v(static_cast<size_t>(hi - lo + 1));
    const auto &ac = a.coefficients();
    const auto &bc = b.coefficients();
    for (size_t i = 0; i < ac.size(); ++i) {
        if (ac[i].is_zero()) continue;
        long ka = a.min_exponent() + static_cast<long>(i);
        for (size_t j = 0; j < bc.size(); ++j) {
            long k = ka + b.min_exponent() + static_cast<long>(j);
            if (k > hi) break;
            if (bc[j].is_zero()) continue;
            v[static_cast<size_t>(k - lo)] = v[static_cast<size_t>(k - lo)] + ac[i] * bc[j];
        }
    }
    return TruncatedULaurent(lo, std::move(v));
}

TruncatedULaurent series_inverse(const TruncatedULaurent &a) {
    auto val = a.valuation();
    if (!val) throw std::invalid_argument("series_inverse: zero series");
    long v = *val;
    long window = a.truncation_order() - v;  // unit part known to this degree
    // Invert the unit power series a_v^{-1} * (1 + higher): standard recursion.
    GaussianRational lead_inv = a.coeff(v).inverse();
    std::vector<GaussianRational> b(static_cast<size_t>(window + 1));
    b[0] = lead_inv;
    for (long k = 1; k <= window; ++k) {
        GaussianRational acc;
        for (long j = 1; j <= k; ++j) acc = acc + a.coeff(v + j) * b[static_cast<size_t>(k - j)];
        b[static_cast<size_t>(k)] = -(lead_inv * acc);
    }
    // Result: u^{-v} * (unit inverse), sound to order a.order - 2v.
    return TruncatedULaurent(-v, std::move(b)).truncate_to(a.truncation_order() - 2 * v);
}

TruncatedULaurent exp_series(const GaussianRational &c, long order) {
    if (order < 0) throw std::invalid_argument("exp_series: negative order");
    std::vector<GaussianRational> v(static_cast<size_t>(order + 1));
    GaussianRational term(1);
    v[0] = term;
    for (long k = 1; k <= order; ++k) {
        term = term * c * GaussianRational(make_rational(Integer(1), Integer(k)));
        v[static_cast<size_t>(k)] = term;
    }
    return TruncatedULaurent(0, std::move(v));
}

SeriesAgreement series_agree(const TruncatedULaurent &a, const TruncatedULaurent &b,
                             long min_overlap) {
    SeriesAgreement res;
    long hi = std::min(a.truncation_order(), b.truncation_order());
    long strict_lo = std::max(a.min_exponent(), b.min_exponent());
    res.enough_overlap = (hi - strict_lo + 1) >= min_overlap;
    long lo = std::min(a.min_exponent(), b.min_exponent());
    res.equal = true;
    for (long k = lo; k <= hi; ++k) {
        if (a.coeff(k) != b.coeff(k)) {
            res.equal = false;
            res.first_mismatch = k;
            break;
        }
    }
    return res;
}

std::string TruncatedULaurent::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (long k = min_exp_; k <= truncation_order(); ++k) {
        GaussianRational c = coeff(k);
        if (c.is_zero()) continue;
        bool negative = false;
        if (c.is_real() && c.re < 0) {
            negative = true;
            c = -c;
        } else if (c.re == 0 && c.im < 0) {
            negative = true;
            c = -c;
        }
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        std::string atom = gwpt::to_string(c);
        bool simple = (c.is_real() || c.re == 0);
        std::string sym = k == 0 ? "" : (k == 1 ? "u" : "u^" + std::to_string(k));
        if (sym.empty()) {
            out << (simple ? atom : "(" + atom + ")");
        } else if (c == GaussianRational(1)) {
            out << sym;
        } else {
            out << (simple ? atom : "(" + atom + ")") << " * " << sym;
        }
    }
    if (first) return "0";
    return out.str();
}

}  // namespace gwpt
