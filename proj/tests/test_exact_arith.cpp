#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwpt/q_form.hpp"
#include "gwpt/u_series.hpp"

using namespace gwpt;

namespace {

GaussianRational gr(long re_n, long re_d, long im_n, long im_d) {
    return {make_rational(re_n, re_d), make_rational(im_n, im_d)};
}

GaussianRational I() { return GaussianRational::unit_i(); }

// independent oracle: coefficients of e^{i a u} by the factorial formula
std::vector<GaussianRational> exp_iau_coeffs(long a, long order) {
    std::vector<GaussianRational> c(static_cast<size_t>(order + 1));
    c[0] = GaussianRational(1);
    GaussianRational step = I() * GaussianRational(Rational(a));
    for (long k = 1; k <= order; ++k)
        c[static_cast<size_t>(k)] =
            c[static_cast<size_t>(k - 1)] * step * GaussianRational(make_rational(1, k));
    return c;
}

std::mt19937 rng_for(unsigned seed) { return std::mt19937(seed); }

QForm random_qform(std::mt19937 &rng, bool with_denominator) {
    std::uniform_int_distribution<long> h_dist(-4, 4), num_dist(-5, 5), den_dist(1, 4);
    std::uniform_int_distribution<int> terms_dist(1, 3), a_dist(1, 3), e_dist(1, 2);
    QForm f;
    int terms = terms_dist(rng);
    for (int t = 0; t < terms; ++t) {
        long p = num_dist(rng);
        if (p == 0) p = 1;
        f = f + QForm::half_monomial(h_dist(rng), make_rational(p, den_dist(rng)));
    }
    if (with_denominator) {
        int nf = terms_dist(rng) - 1;
        for (int t = 0; t < nf; ++t) f = f.with_denominator_factor(a_dist(rng), e_dist(rng));
    }
    return f;
}

}  // namespace

TEST_CASE("series product basics") {
    auto m = [](long k, GaussianRational c) { return TruncatedULaurent::monomial(k, c, k + 8); };
    CHECK(series_product(m(-2, GaussianRational(1)), m(2, GaussianRational(1))).coeff(0) ==
          GaussianRational(1));

    TruncatedULaurent one_plus(0, {GaussianRational(1), GaussianRational(1)});
    TruncatedULaurent one_minus(0, {GaussianRational(1), GaussianRational(-1)});
    TruncatedULaurent prod = series_product(one_plus, one_minus);
    CHECK(prod.coeff(0) == GaussianRational(1));
    CHECK(prod.coeff(1) == GaussianRational(0));
    // truncation: both factors known to degree 1, so the product is exact to 1
    CHECK(prod.truncation_order() == 1);
}

TEST_CASE("square of 2 sin(u/2)/u^3 to two terms") {
    // 2 sin(u/2)/u^3 expanded by hand via the Taylor formula for sin
    std::vector<GaussianRational> c(9);  // exponents -2 .. 6
    c[0] = gr(1, 1, 0, 1);
    c[2] = gr(-1, 24, 0, 1);
    c[4] = gr(1, 1920, 0, 1);
    c[6] = gr(-1, 322560, 0, 1);
    TruncatedULaurent s(-2, c);
    TruncatedULaurent sq = series_product(s, s);
    CHECK(sq.min_exponent() == -4);
    CHECK(sq.coeff(-4) == GaussianRational(1));
    CHECK(sq.coeff(-3) == GaussianRational(0));
    CHECK(sq.coeff(-2) == gr(-1, 12, 0, 1));
}

TEST_CASE("series inverse") {
    // geometric series
    TruncatedULaurent one_plus(0, {GaussianRational(1), GaussianRational(1), GaussianRational(0),
                                   GaussianRational(0), GaussianRational(0)});
    TruncatedULaurent inv = series_inverse(one_plus);
    for (long k = 0; k <= inv.truncation_order(); ++k)
        CHECK(inv.coeff(k) == GaussianRational(k % 2 == 0 ? 1 : -1));

    // inverse of e^{iu} is e^{-iu}
    TruncatedULaurent e_plus = exp_series(I(), 10);
    TruncatedULaurent e_minus = exp_series(-I(), 10);
    TruncatedULaurent e_inv = series_inverse(e_plus);
    CHECK(series_agree(e_inv, e_minus).equal);

    // inverse of 1 - e^{iu}: min exponent -1, leading coefficient i
    TruncatedULaurent one_minus_e = TruncatedULaurent::one(10) - exp_series(I(), 10);
    TruncatedULaurent inv2 = series_inverse(one_minus_e);
    CHECK(inv2.min_exponent() == -1);
    CHECK(inv2.coeff(-1) == I());
    TruncatedULaurent back = series_product(one_minus_e, inv2);
    for (long k = back.min_exponent(); k <= back.truncation_order(); ++k)
        CHECK(back.coeff(k) == GaussianRational(k == 0 ? 1 : 0));

    CHECK_THROWS_AS(series_inverse(TruncatedULaurent::zero(5)), std::invalid_argument);
}

TEST_CASE("exp_series") {
    TruncatedULaurent one = exp_series(GaussianRational(0), 5);
    CHECK(one == TruncatedULaurent::one(5));

    TruncatedULaurent e = exp_series(I(), 3);
    CHECK(e.coeff(0) == GaussianRational(1));
    CHECK(e.coeff(1) == I());
    CHECK(e.coeff(2) == gr(-1, 2, 0, 1));
    CHECK(e.coeff(3) == gr(0, 1, -1, 6));

    CHECK(series_agree(series_product(exp_series(I(), 12), exp_series(-I(), 12)),
                       TruncatedULaurent::one(12))
              .equal);

    CHECK_THROWS_AS(exp_series(I(), -1), std::invalid_argument);
}

TEST_CASE("exp_series group law on random arguments") {
    auto rng = rng_for(17);
    std::uniform_int_distribution<long> dist(-3, 3), den(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
        GaussianRational c1 = gr(dist(rng), den(rng), dist(rng), den(rng));
        GaussianRational c2 = gr(dist(rng), den(rng), dist(rng), den(rng));
        TruncatedULaurent lhs = series_product(exp_series(c1, 10), exp_series(c2, 10));
        TruncatedULaurent rhs = exp_series(c1 + c2, 10);
        CHECK(series_agree(lhs, rhs).equal);
    }
}

TEST_CASE("substitution q = -e^{iu}") {
    // q itself
    TruncatedULaurent q = substitute_q_to_u(QForm::q_monomial(1, Rational(1)), 4);
    CHECK(q.coeff(0) == GaussianRational(-1));
    CHECK(q.coeff(1) == -I());
    CHECK(q.coeff(2) == gr(1, 2, 0, 1));
    CHECK(q.coeff(3) == gr(0, 1, 1, 6));
    CHECK(q.coeff(4) == gr(-1, 24, 0, 1));
    CHECK(q.truncation_order() == 4);

    // q(1+q) = q + q^2 = -e^{iu} + e^{2iu}; oracle: expand both exponentials
    // by the factorial formula and subtract
    QForm f = QForm::q_monomial(1, Rational(1)) + QForm::q_monomial(2, Rational(1));
    long order = 8;
    TruncatedULaurent s = substitute_q_to_u(f, order);
    auto e1 = exp_iau_coeffs(1, order), e2 = exp_iau_coeffs(2, order);
    for (long k = 0; k <= order; ++k)
        CHECK(s.coeff(k) == e2[static_cast<size_t>(k)] - e1[static_cast<size_t>(k)]);
    CHECK(s.coeff(0) == GaussianRational(0));
    CHECK(s.coeff(1) == I());
    CHECK(s.coeff(2) == gr(-3, 2, 0, 1));
    CHECK(s.coeff(3) == gr(0, 1, -7, 6));

    // 1 / (1 - (-q)): pole of order one, residue i
    QForm g = QForm::q_monomial(0, Rational(1)).with_denominator_factor(1, 1);
    TruncatedULaurent t = substitute_q_to_u(g, 6);
    CHECK(t.min_exponent() == -1);
    CHECK(t.coeff(-1) == I());
    CHECK(t.truncation_order() == 6);
}

TEST_CASE("substitution valuation of denominator factors") {
    for (long a = 1; a <= 8; ++a) {
        QForm f = QForm::half_monomial(0, Rational(1)) + QForm::half_monomial(2 * a, Rational(-1));
        TruncatedULaurent s = substitute_q_to_u(f, 8);
        auto val = s.valuation();
        REQUIRE(val.has_value());
        CHECK(*val == 1);
        CHECK(s.coeff(1) == -(I() * GaussianRational(Rational(a))));
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    auto rng = rng_for(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        QForm f = random_qform(rng, true);
        QForm g = random_qform(rng, true);
        long order = 10;
        TruncatedULaurent both = substitute_q_to_u(f * g, order);
        TruncatedULaurent split =
            series_product(substitute_q_to_u(f, order), substitute_q_to_u(g, order));
        auto agree = series_agree(both, split);
        CHECK(agree.equal);
    }
}

TEST_CASE("series product is commutative and associative") {
    auto rng = rng_for(99);
    std::uniform_int_distribution<long> exp_dist(-3, 3), coef(-4, 4), den(1, 3);
    auto random_series = [&]() {
        long lo = exp_dist(rng);
        std::vector<GaussianRational> cs(6);
        for (auto &c : cs) c = gr(coef(rng), den(rng), coef(rng), den(rng));
        return TruncatedULaurent(lo, cs);
    };
    for (int trial = 0; trial < 50; ++trial) {
        TruncatedULaurent a = random_series(), b = random_series(), c = random_series();
        CHECK(series_product(a, b) == series_product(b, a));
        auto left = series_product(series_product(a, b), c);
        auto right = series_product(a, series_product(b, c));
        CHECK(series_agree(left, right).equal);
    }
}

TEST_CASE("qform reduce and equality") {
    // q (1+q) (1-q) / (1+q) reduces to q (1-q); note 1 - (-q) = 1 + q
    QForm q = QForm::q_monomial(1, Rational(1));
    QForm one_plus = QForm::q_monomial(0, Rational(1)) + QForm::q_monomial(1, Rational(1));
    QForm one_minus = QForm::q_monomial(0, Rational(1)) + QForm::q_monomial(1, Rational(-1));
    QForm f = (q * one_plus * one_minus).with_denominator_factor(1, 1);
    CHECK(f.is_laurent_polynomial());
    CHECK(f.reduce() == q * one_minus);

    QForm g = QForm::q_monomial(0, Rational(1)).with_denominator_factor(1, 1);
    CHECK_FALSE(g.is_laurent_polynomial());

    CHECK(QForm::zero().is_laurent_polynomial());
}

TEST_CASE("printing") {
    QForm f = QForm::q_monomial(1, Rational(1)) + QForm::q_monomial(2, Rational(1));
    CHECK(f.to_string() == "q + q^2");

    TruncatedULaurent s(-2, {GaussianRational(1), GaussianRational(0), gr(-1, 24, 0, 1),
                             GaussianRational(0), gr(1, 1920, 0, 1)});
    CHECK(s.to_string() == "u^-2 - 1/24 + 1/1920 * u^2");

    QForm h = QForm::half_monomial(-3, make_rational(1, 2)).with_denominator_factor(2, 1);
    CHECK(h.to_string() == "1/2 * (-q)^(-3/2) / (1-(-q)^2)");
}
