#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwpt/lattice.hpp"

using namespace gwpt;

namespace {

// cofactor-expansion determinant, independent of the library's Bareiss path
Integer det_by_cofactors(const IntegerMatrix &m) {
    int n = m.rows();
    if (n == 1) return m.at(0, 0);
    Integer acc(0);
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntegerMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Integer term = m.at(0, j) * det_by_cofactors(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

IntegerMatrix random_matrix(std::mt19937 &rng, int rows, int cols, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntegerMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
    return m;
}

}  // namespace

TEST_CASE("primitive part") {
    auto [v1, g1] = primitive_part(LatticeVector(2, 4, 6));
    CHECK(v1 == LatticeVector(1, 2, 3));
    CHECK(g1 == 2);
    auto [v2, g2] = primitive_part(LatticeVector(0, 0, 5));
    CHECK(v2 == LatticeVector(0, 0, 1));
    CHECK(g2 == 5);
    auto [v3, g3] = primitive_part(LatticeVector(-3, 6, 0));
    CHECK(v3 == LatticeVector(-1, 2, 0));
    CHECK(g3 == 3);
    CHECK_THROWS_AS(primitive_part(LatticeVector(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("smith normal form examples") {
    SmithDecomposition id3 = smith_normal_form(IntegerMatrix::identity(3));
    CHECK(id3.diagonal() == std::vector<Integer>{1, 1, 1});

    IntegerMatrix m = IntegerMatrix::from_rows({{Integer(2), Integer(2)}, {Integer(2), Integer(-2)}});
    SmithDecomposition snf = smith_normal_form(m);
    CHECK(snf.diagonal() == std::vector<Integer>{2, 4});
    CHECK(snf.U * m * snf.V == snf.D);

    SmithDecomposition z = smith_normal_form(IntegerMatrix(2, 3));
    CHECK(z.diagonal() == std::vector<Integer>{0, 0});
}

TEST_CASE("smith normal form on 1000 seeded matrices") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        int r = dim(rng), c = dim(rng);
        IntegerMatrix m = random_matrix(rng, r, c, 50);
        SmithDecomposition snf = smith_normal_form(m);
        REQUIRE(snf.U * m * snf.V == snf.D);
        Integer du = det_by_cofactors(snf.U);
        Integer dv = det_by_cofactors(snf.V);
        REQUIRE(abs(du) == 1);
        REQUIRE(abs(dv) == 1);
        auto diag = snf.diagonal();
        for (size_t i = 0; i < diag.size(); ++i) {
            REQUIRE(diag[i] >= 0);
            if (i + 1 < diag.size() && diag[i] != 0) REQUIRE(diag[i + 1] % diag[i] == 0);
            if (diag[i] == 0 && i + 1 < diag.size()) REQUIRE(diag[i + 1] == 0);
        }
        // off-diagonal entries vanish
        for (int i = 0; i < snf.D.rows(); ++i)
            for (int j = 0; j < snf.D.cols(); ++j)
                if (i != j) REQUIRE(snf.D.at(i, j) == 0);
    }
}

TEST_CASE("diagonal product equals |det| for square full-rank matrices") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> dim(1, 4);
    int done = 0;
    while (done < 200) {
        int n = dim(rng);
        IntegerMatrix m = random_matrix(rng, n, n, 30);
        Integer d = det_by_cofactors(m);
        if (d == 0) continue;
        ++done;
        auto diag = smith_normal_form(m).diagonal();
        Integer prod(1);
        for (const auto &x : diag) prod *= x;
        CHECK(prod == abs(d));
    }
}

TEST_CASE("integer kernel examples") {
    IntegerMatrix row = IntegerMatrix::from_rows({{Integer(1), Integer(1), Integer(1)}});
    auto basis = integer_kernel(row);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == LatticeVector(1, 0, -1));
    CHECK(basis[1] == LatticeVector(0, 1, -1));

    CHECK(integer_kernel(IntegerMatrix::identity(3)).empty());

    IntegerMatrix two = IntegerMatrix::from_rows(
        {{Integer(1), Integer(0), Integer(0)}, {Integer(0), Integer(1), Integer(0)}});
    auto b2 = integer_kernel(two);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0] == LatticeVector(0, 0, 1));
}

TEST_CASE("integer kernel properties") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        int r = dim(rng);
        IntegerMatrix m = random_matrix(rng, r, 3, 9);
        auto basis = integer_kernel(m);
        for (const auto &v : basis) {
            auto img = m.apply({v.x, v.y, v.z});
            for (const auto &x : img) REQUIRE(x == 0);
            REQUIRE(primitive_part(v).second == 1);
        }
        if (!basis.empty())
            REQUIRE(lattice_rank(IntegerMatrix::from_row_vectors(basis)) ==
                    static_cast<int>(basis.size()));
        REQUIRE(static_cast<int>(basis.size()) == 3 - lattice_rank(m));
    }
}

TEST_CASE("coordinates in a row basis") {
    IntegerMatrix basis = IntegerMatrix::from_rows(
        {{Integer(1), Integer(0), Integer(1)}, {Integer(0), Integer(2), Integer(0)}});
    auto c = coordinates_in_row_basis(basis, {Integer(3), Integer(4), Integer(3)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 3);
    CHECK((*c)[1] == 2);
    CHECK_FALSE(coordinates_in_row_basis(basis, {Integer(0), Integer(1), Integer(0)}).has_value());
    CHECK_FALSE(coordinates_in_row_basis(basis, {Integer(0), Integer(0), Integer(1)}).has_value());
}

TEST_CASE("saturation") {
    IntegerMatrix rows = IntegerMatrix::from_rows({{Integer(2), Integer(0), Integer(0)},
                                                   {Integer(0), Integer(3), Integer(0)}});
    IntegerMatrix sat = saturation_row_basis(rows);
    REQUIRE(sat.rows() == 2);
    CHECK(sat.row3(0) == LatticeVector(1, 0, 0));
    CHECK(sat.row3(1) == LatticeVector(0, 1, 0));
}
