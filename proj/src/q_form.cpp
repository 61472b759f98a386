#include "gwpt/q_form.hpp"

#include <sstream>

namespace gwpt {

void QForm::add_term(long h, const Rational &c) {
    if (c == 0) return;
    auto it = num_.find(h);
    if (it == num_.end()) {
        num_.emplace(h, c);
    } else {
        it->second += c;
        if (it->second == 0) num_.erase(it);
    }
}

QForm QForm::half_monomial(long h, const Rational &c) {
    QForm f;
    f.add_term(h, c);
    return f;
}

QForm QForm::q_monomial(long k, const Rational &c) {
    Rational s = (k % 2 == 0) ? c : Rational(-c);
    return half_monomial(2 * k, s);
}

QForm QForm::operator+(const QForm &o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ != o.den_)
        throw std::invalid_argument("QForm sum needs matching denominators");
    QForm r = *this;
    for (const auto &[h, c] : o.num_) r.add_term(h, c);
    if (r.num_.empty()) r.den_.clear();
    return r;
}

QForm QForm::operator*(const QForm &o) const {
    QForm r;
    for (const auto &[h1, c1] : num_)
        for (const auto &[h2, c2] : o.num_) r.add_term(h1 + h2, c1 * c2);
    if (r.num_.empty()) return r;
    r.den_ = den_;
    for (const auto &[a, e] : o.den_) r.den_[a] += e;
    return r;
}

QForm QForm::operator-() const {
    QForm r = *this;
    for (auto &[h, c] : r.num_) c = -c;
    return r;
}

QForm QForm::scale(const Rational &c) const {
    if (c == 0) return QForm();
    QForm r = *this;
    for (auto &[h, v] : r.num_) v *= c;
    return r;
}

QForm QForm::shift_half(long h) const {
    QForm r;
    for (const auto &[k, c] : num_) r.num_.emplace(k + h, c);
    r.den_ = den_;
    return r;
}

QForm QForm::with_denominator_factor(long a, long e) const {
    if (a < 1 || e < 1) throw std::invalid_argument("denominator factor needs a,e >= 1");
    if (is_zero()) return *this;
    QForm r = *this;
    r.den_[a] += e;
    return r;
}

namespace {

// Exact division of a Laurent polynomial in x = (-q)^{1/2} by 1 - x^{2a}.
// The divisor is a unit at the bottom, so the quotient satisfies
// h_k = f_k + h_{k-2a}; divisibility means the top 2a quotient slots vanish.
bool divide_by_factor(const std::map<long, Rational> &num, long a,
                      std::map<long, Rational> &quotient) {
    if (num.empty()) {
        quotient.clear();
        return true;
    }
    long lo = num.begin()->first;
    long hi = num.rbegin()->first;
    long width = hi - lo + 1;
    std::vector<Rational> h(static_cast<size_t>(width), Rational(0));
    auto f_at = [&](long k) -> Rational {
        auto it = num.find(k);
        return it == num.end() ? Rational(0) : it->second;
    };
    for (long k = lo; k <= hi; ++k) {
        Rational prev = (k - 2 * a >= lo) ? h[static_cast<size_t>(k - 2 * a - lo)] : Rational(0);
        h[static_cast<size_t>(k - lo)] = f_at(k) + prev;
    }
    for (long k = std::max(lo, hi - 2 * a + 1); k <= hi; ++k)
        if (h[static_cast<size_t>(k - lo)] != 0) return false;
    quotient.clear();
    for (long k = lo; k <= hi - 2 * a; ++k) {
        const Rational &c = h[static_cast<size_t>(k - lo)];
        if (c != 0) quotient.emplace(k, c);
    }
    return true;
}

}  // namespace

QForm QForm::reduce() const {
    QForm r = *this;
    if (r.num_.empty()) {
        r.den_.clear();
        return r;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = r.den_.begin(); it != r.den_.end();) {
            std::map<long, Rational> q;
            if (it->second > 0 && divide_by_factor(r.num_, it->first, q) && !q.empty()) {
                r.num_ = std::move(q);
                if (--it->second == 0)
                    it = r.den_.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return r;
}

bool QForm::operator==(const QForm &o) const {
    QForm a = reduce(), b = o.reduce();
    return a.num_ == b.num_ && a.den_ == b.den_;
}

TruncatedULaurent substitute_q_to_u(const QForm &f, long order) {
    long pole_budget = 0;
    for (const auto &[a, e] : f.den_) {
        if (a < 1) throw std::invalid_argument("denominator factor with a < 1");
        pole_budget += e;
    }
    if (f.is_zero()) return TruncatedULaurent::zero(order);
    long work = order + 2 * pole_budget + 2;

    TruncatedULaurent acc = TruncatedULaurent::zero(work);
    for (const auto &[h, c] : f.num_) {
        // (-q)^{h/2} -> e^{i h u / 2}
        GaussianRational coef(Rational(0), make_rational(Integer(h), Integer(2)));
        acc = acc + exp_series(coef, work).scale(GaussianRational(c));
    }
    for (const auto &[a, e] : f.den_) {
        TruncatedULaurent base =
            TruncatedULaurent::one(work) - exp_series(GaussianRational(Rational(0), Rational(a)), work);
        TruncatedULaurent inv = series_inverse(base);
        for (long k = 0; k < e; ++k) acc = series_product(acc, inv);
    }
    if (acc.truncation_order() < order)
        throw std::runtime_error("substitution lost more precision than budgeted");
    return acc.truncate_to(order);
}

std::string QForm::to_string() const {
    if (num_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto &[h, c] : num_) {
        Rational shown = c;
        std::string sym;
        if (h % 2 == 0) {
            long k = h / 2;
            if (k % 2 != 0) shown = -shown;  // (-q)^k = (-1)^k q^k
            sym = k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
        } else {
            std::string exp = std::to_string(h) + "/2";
            sym = "(-q)^(" + exp + ")";
        }
        bool neg = shown < 0;
        Rational mag = neg ? Rational(-shown) : shown;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (sym.empty())
            out << mag.get_str();
        else if (mag == 1)
            out << sym;
        else
            out << mag.get_str() << " * " << sym;
    }
    if (!den_.empty()) {
        out << " / ";
        bool f2 = true;
        for (const auto &[a, e] : den_) {
            if (!f2) out << " ";
            f2 = false;
            out << "(1-(-q)" << (a == 1 ? "" : "^" + std::to_string(a)) << ")";
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

}  // namespace gwpt
