#include "gwpt/series.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gwpt {

PartitionVector PartitionVector::make(std::vector<std::vector<long>> parts) {
    for (const auto &mu : parts) {
        for (size_t i = 0; i < mu.size(); ++i) {
            if (mu[i] < 1) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && mu[i] > mu[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }
    return PartitionVector{std::move(parts)};
}

long PartitionVector::total_size() const {
    long t = 0;
    for (const auto &mu : partitions)
        for (long p : mu) t += p;
    return t;
}

long PartitionVector::total_length() const {
    long t = 0;
    for (const auto &mu : partitions) t += static_cast<long>(mu.size());
    return t;
}

PartitionStats partition_stats(const PartitionVector &mu) {
    PartitionStats st{Integer(1), Integer(1), 1};
    for (const auto &p : mu.partitions) {
        std::map<long, unsigned long> mult;
        long size = 0;
        for (long part : p) {
            st.m *= part;
            ++mult[part];
            size += part;
        }
        for (const auto &[part, count] : mult) st.aut *= factorial(count);
        long exponent = static_cast<long>(p.size()) - size;
        if (((exponent % 2) + 2) % 2 == 1) st.sign = -st.sign;
    }
    return st;
}

StarDiscreteData data_for_full_boundary_star(const Star &s) {
    if (s.geometry.kind() != GeometryKind::FullBoundary)
        throw std::invalid_argument("discrete data rule applies to full-boundary stars");
    StarDiscreteData d;
    d.d = s.total_weight();
    d.ell_minus_size = static_cast<long>(s.rays.size()) - s.total_weight();
    return d;
}

namespace {

StarDiscreteData glued_data(const std::vector<StarDiscreteData> &vs, const PartitionVector &mu) {
    StarDiscreteData out;
    for (const auto &d : vs) {
        out.d += d.d;
        out.ell_minus_size += d.ell_minus_size;
    }
    out.d -= 2 * mu.total_size();
    out.ell_minus_size -= 2 * (mu.total_length() - mu.total_size());
    return out;
}

Rational ratio(const Integer &num, const Integer &den) { return make_rational(num, den); }

}  // namespace

GWSeries glue_degeneration(const std::vector<GWSeries> &vertex_series, const PartitionVector &mu) {
    if (vertex_series.empty()) throw std::invalid_argument("glue needs at least one vertex series");
    PartitionStats st = partition_stats(mu);
    TruncatedULaurent acc = vertex_series[0].series;
    std::vector<StarDiscreteData> data = {vertex_series[0].data};
    for (size_t i = 1; i < vertex_series.size(); ++i) {
        acc = series_product(acc, vertex_series[i].series);
        data.push_back(vertex_series[i].data);
    }
    acc = acc.shift_scale(2 * mu.total_length(), GaussianRational(ratio(st.m, st.aut)));
    return GWSeries{acc, glued_data(data, mu)};
}

PTSeries glue_degeneration(const std::vector<PTSeries> &vertex_series, const PartitionVector &mu) {
    if (vertex_series.empty()) throw std::invalid_argument("glue needs at least one vertex series");
    PartitionStats st = partition_stats(mu);
    QForm acc = vertex_series[0].form;
    std::vector<StarDiscreteData> data = {vertex_series[0].data};
    for (size_t i = 1; i < vertex_series.size(); ++i) {
        acc = acc * vertex_series[i].form;
        data.push_back(vertex_series[i].data);
    }
    long size = mu.total_size();
    Rational scalar = ratio(st.m, st.aut);
    if (st.sign < 0) scalar = -scalar;
    // q^{-|mu|} = (-1)^{|mu|} (-q)^{-|mu|}
    if (((size % 2) + 2) % 2 == 1) scalar = -scalar;
    acc = acc.shift_half(-2 * size).scale(scalar);
    return PTSeries{acc.reduce(), glued_data(data, mu)};
}

GWSeries linear_star_gw(long d, long ell) {
    if (d < 1 || ell < 1) throw std::invalid_argument("linear star needs d, ell >= 1");
    StarDiscreteData data{2 * d, 2 - 2 * d};
    if (ell > 1) return GWSeries{TruncatedULaurent::zero(30), data};
    return GWSeries{
        TruncatedULaurent::monomial(-2, GaussianRational(ratio(Integer(1), Integer(d))), 30), data};
}

PTSeries linear_star_pt(long d, long ell) {
    if (d < 1 || ell < 1) throw std::invalid_argument("linear star needs d, ell >= 1");
    StarDiscreteData data{2 * d, 2 - 2 * d};
    if (ell > 1) return PTSeries{QForm::zero(), data};
    Rational c = ratio(Integer(1), Integer(d));
    if (d % 2 == 0) c = -c;  // (-1)^{d-1}/d
    return PTSeries{QForm::q_monomial(d, c), data};
}

GWSeries principal_gw(long N, long order) {
    if (N < 1) throw std::invalid_argument("multiplicity must be positive");
    // (2/u^3) sin(N u / 2) = sum_k (-1)^k 2 (N/2)^{2k+1} u^{2k-2} / (2k+1)!
    long min_exp = -2;
    if (order < min_exp) throw std::invalid_argument("order below leading exponent");
    std::vector<GaussianRational> coeffs(static_cast<size_t>(order - min_exp + 1));
    for (long k = 0;; ++k) {
        long e = 2 * k - 2;
        if (e > order) break;
        Integer num = pow_integer(Integer(N), static_cast<unsigned long>(2 * k + 1));
        Integer den = pow_integer(Integer(2), static_cast<unsigned long>(2 * k)) *
                      factorial(static_cast<unsigned long>(2 * k + 1));
        Rational c = ratio(num, den);
        if (k % 2 == 1) c = -c;
        coeffs[static_cast<size_t>(e - min_exp)] = GaussianRational(c);
    }
    return GWSeries{TruncatedULaurent(min_exp, std::move(coeffs)),
                    StarDiscreteData{N + 2, 1 - N}};
}

PTSeries principal_pt(long N) {
    if (N < 1) throw std::invalid_argument("multiplicity must be positive");
    // q (1 - (-q)^N): in (-q) exponents, -(-q) + (-q)^{N+1}
    QForm f = QForm::half_monomial(2, Rational(-1)) + QForm::half_monomial(2 * (N + 1), Rational(1));
    return PTSeries{f, StarDiscreteData{N + 2, 1 - N}};
}

PTSeries principal_pt_display(long N) {
    if (N < 1) throw std::invalid_argument("multiplicity must be positive");
    QForm f = QForm::q_monomial(1, Rational(1));
    QForm one_plus_q =
        QForm::q_monomial(0, Rational(1)) + QForm::q_monomial(1, Rational(1));
    for (long i = 0; i < N; ++i) f = f * one_plus_q;
    return PTSeries{f, StarDiscreteData{N + 2, 1 - N}};
}

CorrespondenceResult correspondence_check(const PTSeries &pt, const GWSeries &gw, long d,
                                          long sigma, long order) {
    CorrespondenceResult res;
    TruncatedULaurent lhs = substitute_q_to_u(pt.form.shift_half(-d), order);
    TruncatedULaurent rhs = gw.series.shift_scale(d + sigma, i_pow(-(d + sigma)));
    if (rhs.truncation_order() > order && rhs.min_exponent() <= order) rhs = rhs.truncate_to(order);
    SeriesAgreement agree = series_agree(lhs, rhs, 5);
    if (!agree.enough_overlap) {
        res.insufficient_truncation = true;
        return res;
    }
    res.pass = agree.equal;
    res.first_mismatch_exponent = agree.first_mismatch;
    return res;
}

std::optional<PrefactorFit> fit_prefactor(const PTSeries &pt, const GWSeries &gw, long order) {
    if (pt.form.is_zero() || gw.series.is_zero()) return std::nullopt;
    auto gw_val = gw.series.valuation();
    if (!gw_val) return std::nullopt;
    static const GaussianRational units[4] = {GaussianRational(1), GaussianRational(-1),
                                              GaussianRational::unit_i(),
                                              -GaussianRational::unit_i()};
    for (long d = -40; d <= 40; ++d) {
        TruncatedULaurent lhs = substitute_q_to_u(pt.form.shift_half(-d), order);
        auto lhs_val = lhs.valuation();
        if (!lhs_val) continue;
        // valuations must align: d + sigma + val(gw) = val(lhs)
        long sigma = *lhs_val - *gw_val - d;
        if (sigma < -40 || sigma > 40) continue;
        TruncatedULaurent rhs = gw.series.shift_scale(d + sigma, i_pow(-(d + sigma)));
        if (rhs.truncation_order() > order && rhs.min_exponent() <= order)
            rhs = rhs.truncate_to(order);
        GaussianRational lead_l = lhs.coeff(*lhs_val);
        if (*lhs_val < rhs.min_exponent() || *lhs_val > rhs.truncation_order()) continue;
        GaussianRational lead_r = rhs.coeff(*lhs_val);
        if (lead_r.is_zero()) continue;
        GaussianRational unit = lead_r / lead_l;
        bool unit_ok = false;
        for (const auto &u : units)
            if (unit == u) unit_ok = true;
        if (!unit_ok) continue;
        SeriesAgreement agree = series_agree(lhs.scale(unit), rhs, 5);
        if (agree.enough_overlap && agree.equal) return PrefactorFit{d, sigma, unit};
    }
    return std::nullopt;
}

bool is_laurent_polynomial(const QForm &f) { return f.is_laurent_polynomial(); }

}  // namespace gwpt
