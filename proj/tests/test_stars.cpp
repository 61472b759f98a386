#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwpt/stars.hpp"

using namespace gwpt;

namespace {

ElementaryGeometry fb() { return ElementaryGeometry::full_boundary(); }

Star fb_star(std::vector<std::pair<LatticeVector, long>> rays, long k = 0,
             RationalPoint base = {}) {
    std::vector<WeightedRay> rs;
    for (auto &[d, w] : rays) rs.push_back({d, w});
    return Star::make(fb(), base, rs, k);
}

// trivalent star of multiplicity 1
Star mult1_star() {
    return fb_star({{LatticeVector(1, 0, 0), 1},
                    {LatticeVector(0, 1, 0), 1},
                    {LatticeVector(-1, -1, 0), 1}});
}

// the two-vertex complex of the first 4-valent constraint case
ChowOneComplex case_i_complex(long n) {
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(1, 1, n);
    return ChowOneComplex::make(fb(), vs, {{0, 1, 1}},
                                {{0, LatticeVector(1, 0, 0), 1},
                                 {0, LatticeVector(-2, -1, -n), 1},
                                 {1, LatticeVector(0, 1, 0), 1},
                                 {1, LatticeVector(1, 0, n), 1}});
}

// two 2-valent vertices on the x-axis: the unstable straight line
ChowOneComplex straight_line_complex() {
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(1, 0, 0);
    return ChowOneComplex::make(fb(), vs, {{0, 1, 1}},
                                {{0, LatticeVector(-1, 0, 0), 1},
                                 {1, LatticeVector(1, 0, 0), 1}});
}

IntegerMatrix random_unimodular(std::mt19937 &rng) {
    std::uniform_int_distribution<int> which(0, 2), idx(0, 2);
    std::uniform_int_distribution<long> shear(-2, 2);
    IntegerMatrix u = IntegerMatrix::identity(3);
    for (int step = 0; step < 8; ++step) {
        int op = which(rng);
        int i = idx(rng), j = idx(rng);
        IntegerMatrix e = IntegerMatrix::identity(3);
        if (op == 0 && i != j) {
            e.at(i, j) = shear(rng);
        } else if (op == 1 && i != j) {
            e = IntegerMatrix(3, 3);
            for (int r = 0; r < 3; ++r) {
                int c = r == i ? j : (r == j ? i : r);
                e.at(r, c) = 1;
            }
        } else {
            e.at(i, i) = -1;
        }
        u = u * e;
    }
    return u;
}

}  // namespace

TEST_CASE("balancing") {
    CHECK(is_balanced(mult1_star()));
    CHECK_FALSE(is_balanced(fb_star({{LatticeVector(1, 0, 0), 1}})));

    // any admissible star at the origin of R^3_{>=0} balances vacuously
    auto tnb = ElementaryGeometry::three_non_boundary();
    Star corner = Star::make(tnb, {0, 0, 0},
                             {{LatticeVector(1, 0, 0), 2}, {LatticeVector(0, 1, 1), 3}}, 0);
    CHECK(is_balanced(corner));

    // boundary vertex of the straight one-non-boundary geometry: vertical
    // excess is absorbed by the collapsed direction
    auto one_nb = ElementaryGeometry::one_non_boundary({});
    Star lifted = Star::make(one_nb, {0, 0, 0},
                             {{LatticeVector(1, 0, 1), 1}, {LatticeVector(-1, 0, 2), 1}}, 0);
    CHECK(is_balanced(lifted));
    Star tilted = Star::make(one_nb, {0, 0, 0},
                             {{LatticeVector(1, 0, 1), 1}, {LatticeVector(0, -1, 2), 1}}, 0);
    CHECK_FALSE(is_balanced(tilted));
}

TEST_CASE("multiplicity and normal form") {
    auto md1 = multiplicity_and_normalize(mult1_star());
    CHECK(md1.n == 1);
    CHECK(md1.m == 1);
    CHECK(md1.N == 1);
    REQUIRE(md1.U.has_value());

    auto md2 = multiplicity_and_normalize(fb_star({{LatticeVector(1, 0, 0), 1},
                                                   {LatticeVector(0, 1, 0), 2},
                                                   {LatticeVector(-1, -2, 0), 1}}));
    CHECK(md2.n == 1);
    CHECK(md2.m == 2);
    CHECK(md2.N == 2);

    auto md3 = multiplicity_and_normalize(fb_star({{LatticeVector(1, 1, 0), 1},
                                                   {LatticeVector(1, -1, 0), 1},
                                                   {LatticeVector(-1, 0, 0), 4}}));
    CHECK(md3.n == 1);
    CHECK(md3.m == 2);
    CHECK(md3.N == 2);

    CHECK_THROWS_AS(multiplicity_and_normalize(fb_star(
                        {{LatticeVector(1, 0, 0), 1}, {LatticeVector(-1, 0, 0), 1}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(multiplicity_and_normalize(fb_star({{LatticeVector(1, 0, 0), 1},
                                                        {LatticeVector(0, 1, 0), 1},
                                                        {LatticeVector(-1, -2, 0), 1}})),
                    std::invalid_argument);  // unbalanced
}

TEST_CASE("normal form transform maps the star onto the Smith model") {
    std::vector<Star> stars = {
        mult1_star(),
        fb_star({{LatticeVector(1, 0, 0), 1},
                 {LatticeVector(0, 1, 0), 2},
                 {LatticeVector(-1, -2, 0), 1}}),
        fb_star({{LatticeVector(1, 1, 0), 1},
                 {LatticeVector(1, -1, 0), 1},
                 {LatticeVector(-1, 0, 0), 4}}),
        fb_star({{LatticeVector(2, 1, 1), 3},
                 {LatticeVector(0, 1, 1), 6},
                 {LatticeVector(-1, -1, -1), 6}}),
    };
    for (const auto &s : stars) {
        auto md = multiplicity_and_normalize(s);
        REQUIRE(md.U.has_value());
        Star t = transform_star(*md.U, s);
        std::vector<LatticeVector> weighted;
        for (const auto &r : t.rays) weighted.push_back(r.dir * Integer(r.weight));
        std::sort(weighted.begin(), weighted.end());
        std::vector<LatticeVector> want = {LatticeVector(md.n, 0, 0),
                                           LatticeVector(0, md.m * md.n, 0),
                                           LatticeVector(-md.n, -md.m * md.n, 0)};
        std::sort(want.begin(), want.end());
        CHECK(weighted == want);
    }
}

TEST_CASE("a star can fail to have the normal form even with valid Smith data") {
    // weight multiset {1,1,1} cannot become {n, mn, n} = {1,5,1}
    Star s = fb_star({{LatticeVector(1, 0, 0), 1},
                      {LatticeVector(1, 5, 0), 1},
                      {LatticeVector(-2, -5, 0), 1}});
    auto md = multiplicity_and_normalize(s);
    CHECK(md.n == 1);
    CHECK(md.m == 5);
    CHECK(md.N == 5);
    CHECK_FALSE(md.U.has_value());
}

TEST_CASE("multiplicity and balancing are GL3(Z) invariants") {
    std::mt19937 rng(1234);
    std::vector<Star> stars = {mult1_star(),
                               fb_star({{LatticeVector(1, 0, 0), 2},
                                        {LatticeVector(0, 1, 0), 6},
                                        {LatticeVector(-1, -3, 0), 2}}),
                               fb_star({{LatticeVector(1, 1, 0), 1},
                                        {LatticeVector(1, -1, 0), 1},
                                        {LatticeVector(-1, 0, 0), 4}})};
    for (int trial = 0; trial < 100; ++trial) {
        IntegerMatrix u = random_unimodular(rng);
        for (const auto &s : stars) {
            Star t = transform_star(u, s);
            CHECK(is_balanced(t) == is_balanced(s));
            CHECK(multiplicity_and_normalize(t).N == multiplicity_and_normalize(s).N);
        }
        Star unbal = fb_star({{LatticeVector(1, 0, 0), 1}, {LatticeVector(0, 1, 0), 1}});
        CHECK(is_balanced(transform_star(u, unbal)) == is_balanced(unbal));
    }
}

TEST_CASE("star visibility") {
    CHECK(is_visible_star(mult1_star()));
    CHECK_FALSE(is_visible_star(
        fb_star({{LatticeVector(1, 0, 0), 1}, {LatticeVector(-1, 0, 0), 1}})));
    Star corner = Star::make(ElementaryGeometry::three_non_boundary(), {0, 0, 0},
                             {{LatticeVector(1, 0, 0), 1}}, 0);
    CHECK(is_visible_star(corner));
    // a single interior ray cannot separate all of L_p
    CHECK_FALSE(is_visible_star(fb_star({{LatticeVector(1, 0, 0), 3}})));
}

TEST_CASE("complex visibility") {
    // a one-vertex complex agrees with the star predicate
    std::vector<Star> stars = {mult1_star(),
                               fb_star({{LatticeVector(1, 0, 0), 1}, {LatticeVector(-1, 0, 0), 1}}),
                               fb_star({{LatticeVector(1, 0, 0), 3}})};
    for (const auto &s : stars)
        CHECK(is_visible_complex(star_to_complex(s)) == is_visible_star(s));

    for (long n = 1; n <= 4; ++n) CHECK(is_visible_complex(case_i_complex(n)));

    CHECK_FALSE(is_visible_complex(straight_line_complex()));
}

TEST_CASE("asymptotic star") {
    Star s = mult1_star();
    Star back = asymptotic_star(star_to_complex(s));
    CHECK(back.rays == s.rays);
    CHECK(back.base == RationalPoint(0, 0, 0));

    // parallel rays at different vertices add their multiplicities
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(0, 0, 1);
    ChowOneComplex c = ChowOneComplex::make(fb(), vs, {{0, 1, 1}},
                                            {{0, LatticeVector(1, 0, 0), 1},
                                             {1, LatticeVector(1, 0, 0), 2},
                                             {0, LatticeVector(-1, 0, 0), 3},
                                             {1, LatticeVector(-1, 0, -1), 1}});
    Star a = asymptotic_star(c);
    REQUIRE(a.rays.size() == 3);
    for (const auto &r : a.rays)
        if (r.dir == LatticeVector(1, 0, 0)) CHECK(r.weight == 3);

    Star asym = asymptotic_star(case_i_complex(2));
    Star four = fb_star({{LatticeVector(1, 0, 0), 1},
                         {LatticeVector(0, 1, 0), 1},
                         {LatticeVector(1, 0, 2), 1},
                         {LatticeVector(-2, -1, -2), 1}});
    CHECK(asym.rays == four.rays);
}

TEST_CASE("star at a vertex") {
    ChowOneComplex c = case_i_complex(3);
    Star shifted = star_at_vertex(c, 1);
    Star expect = fb_star({{LatticeVector(0, 1, 0), 1},
                           {LatticeVector(1, 0, 3), 1},
                           {LatticeVector(-1, -1, -3), 1}},
                          0, RationalPoint(1, 1, 3));
    CHECK(shifted.rays == expect.rays);
    CHECK(shifted.base == expect.base);
    CHECK(is_balanced(shifted));
    CHECK(is_balanced(star_at_vertex(c, 0)));

    Star s = mult1_star();
    Star self = star_at_vertex(star_to_complex(s), 0);
    CHECK(self.rays == s.rays);

    Star line_vertex = star_at_vertex(straight_line_complex(), 0);
    REQUIRE(line_vertex.rays.size() == 2);
    CHECK(line_vertex.rays[0].dir == -line_vertex.rays[1].dir);

    CHECK_THROWS_AS(star_at_vertex(c, 5), std::invalid_argument);
}

TEST_CASE("stabilize erases redundant line vertices") {
    // x-axis with three vertices; the inner ones are unstable
    std::vector<ComplexVertex> vs(3);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(1, 0, 0);
    vs[2].position = RationalPoint(3, 0, 0);
    ChowOneComplex line = ChowOneComplex::make(fb(), vs, {{0, 1, 2}, {1, 2, 2}},
                                               {{0, LatticeVector(-1, 0, 0), 2},
                                                {2, LatticeVector(1, 0, 0), 2}});
    ChowOneComplex st = stabilize(line);
    CHECK(st.vertices.size() == 1);
    CHECK(st.edges.empty());
    REQUIRE(st.rays.size() == 2);
    CHECK(asymptotic_star(st).rays == asymptotic_star(line).rays);
    // idempotent
    CHECK(stabilize(st).canonical_key() == st.canonical_key());
}

TEST_CASE("stabilize keeps marked or class-carrying vertices") {
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[0].markings = {1};
    vs[1].position = RationalPoint(1, 0, 0);
    ChowOneComplex c = ChowOneComplex::make(fb(), vs, {{0, 1, 1}},
                                            {{0, LatticeVector(-1, 0, 0), 1},
                                             {1, LatticeVector(1, 0, 0), 1}});
    ChowOneComplex st = stabilize(c);
    CHECK(st.vertices.size() == 1);  // the unmarked end goes, the marked one stays
    CHECK(st.vertices[0].markings.count(1) == 1);

    vs[0].markings.clear();
    vs[0].carries_class = true;
    ChowOneComplex c2 = ChowOneComplex::make(fb(), vs, {{0, 1, 1}},
                                             {{0, LatticeVector(-1, 0, 0), 1},
                                              {1, LatticeVector(1, 0, 0), 1}});
    ChowOneComplex st2 = stabilize(c2);
    CHECK(st2.vertices[0].carries_class);
}

TEST_CASE("stabilize leaves stable complexes alone and rejects weight mismatches") {
    ChowOneComplex c = case_i_complex(2);
    CHECK(is_stable(c));
    CHECK(stabilize(c).canonical_key() == c.canonical_key());

    // 2-valent collinear vertex with different incident weights
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(1, 0, 0);
    ChowOneComplex bad = ChowOneComplex::make(fb(), vs, {{0, 1, 2}},
                                              {{0, LatticeVector(-1, 0, 0), 1},
                                               {1, LatticeVector(1, 0, 0), 2}});
    CHECK_FALSE(is_stable(bad));
    CHECK_THROWS_AS(stabilize(bad), std::invalid_argument);
}

TEST_CASE("bent 2-valent vertices are stable") {
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(1, 0, 0);
    auto tnb = ElementaryGeometry::three_non_boundary();
    // vertex 0 sits at the origin corner with a bend absorbed by balancing
    ChowOneComplex c = ChowOneComplex::make(tnb, vs, {{0, 1, 1}},
                                            {{1, LatticeVector(1, 0, 0), 1},
                                             {0, LatticeVector(0, 1, 0), 1}});
    CHECK(is_stable(c));
    CHECK(is_balanced_at_every_vertex(c));
}

TEST_CASE("complex construction rejects bad data") {
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(0, 0, 0);
    CHECK_THROWS_AS(ChowOneComplex::make(fb(), vs, {{0, 1, 1}}, {}), std::invalid_argument);

    vs[1].position = RationalPoint(1, 0, 0);
    CHECK_THROWS_AS(ChowOneComplex::make(fb(), vs, {}, {}), std::invalid_argument);  // disconnected
    CHECK_NOTHROW(ChowOneComplex::make(fb(), vs, {}, {}, true));
    CHECK_THROWS_AS(ChowOneComplex::make(fb(), vs, {{0, 1, 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(
        ChowOneComplex::make(fb(), vs, {{0, 1, 1}}, {{0, LatticeVector(2, 2, 0), 1}}),
        std::invalid_argument);

    // ray leaving the support
    auto tnb = ElementaryGeometry::three_non_boundary();
    std::vector<ComplexVertex> vt(1);
    vt[0].position = RationalPoint(1, 1, 1);
    CHECK_THROWS_AS(ChowOneComplex::make(tnb, vt, {}, {{0, LatticeVector(-1, 0, 0), 1}}),
                    std::invalid_argument);
}

TEST_CASE("embedding validation") {
    CHECK(case_i_complex(1).validate_embedding());

    // a ray running back along an edge is not embedded
    std::vector<ComplexVertex> vs(2);
    vs[0].position = RationalPoint(0, 0, 0);
    vs[1].position = RationalPoint(1, 0, 0);
    ChowOneComplex overlap = ChowOneComplex::make(fb(), vs, {{0, 1, 1}},
                                                  {{1, LatticeVector(-1, 0, 0), 1},
                                                   {0, LatticeVector(1, 1, 0), 1}});
    CHECK_FALSE(overlap.validate_embedding());

    // crossing cells are not embedded
    std::vector<ComplexVertex> vx(2);
    vx[0].position = RationalPoint(0, -1, 0);
    vx[1].position = RationalPoint(1, 0, 0);
    ChowOneComplex crossing = ChowOneComplex::make(fb(), vx, {{0, 1, 1}},
                                                   {{0, LatticeVector(0, 1, 0), 1},
                                                    {1, LatticeVector(-1, 0, 0), 1}});
    CHECK_FALSE(crossing.validate_embedding());
}
