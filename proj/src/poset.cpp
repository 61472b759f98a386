#include "gwpt/poset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gwpt {

namespace {

// Solve A x = rhs over Q for a small dense system; checks consistency.
std::optional<std::vector<Rational>> rational_solve(std::vector<std::vector<Rational>> a,
                                                    std::vector<Rational> rhs) {
    size_t rows = a.size();
    size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    // require a unique solution (full column rank)
    if (r < cols) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (size_t i = 0; i < r; ++i)
        x[static_cast<size_t>(pivot_col_of_row[i])] = rhs[i] / a[i][static_cast<size_t>(pivot_col_of_row[i])];
    return x;
}

std::vector<Rational> as_rationals(const LatticeVector &v) {
    return {Rational(v.x), Rational(v.y), Rational(v.z)};
}

LatticeVector weighted_sum_of(const std::vector<WeightedRay> &rays) {
    LatticeVector acc;
    for (const auto &r : rays) acc = acc + r.dir * Integer(r.weight);
    return acc;
}

// weak compositions of k into parts slots
void weak_compositions(long k, int parts, std::vector<long> &cur,
                       std::vector<std::vector<long>> &out) {
    if (parts == 1) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long first = 0; first <= k; ++first) {
        cur.push_back(first);
        weak_compositions(k - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<ComplexVertex> make_vertices(const std::vector<RationalPoint> &positions,
                                         const std::vector<long> &marking_counts) {
    std::vector<ComplexVertex> vs(positions.size());
    long next_label = 1;
    for (size_t i = 0; i < positions.size(); ++i) {
        vs[i].position = positions[i];
        for (long j = 0; j < marking_counts[i]; ++j) vs[i].markings.insert(next_label++);
    }
    return vs;
}

ChowOneComplex translate_to_origin(const ChowOneComplex &c) {
    if (c.geometry.kind() != GeometryKind::FullBoundary) return c;
    RationalPoint best = c.vertices[0].position;
    for (const auto &v : c.vertices)
        if (v.position < best) best = v.position;
    ChowOneComplex out = c;
    for (auto &v : out.vertices) v.position = v.position - best;
    return out;
}

struct CatalogBuilder {
    const Star &source;
    std::set<std::string> seen;
    std::vector<ChowOneComplex> out;

    void offer(ElementaryGeometry geometry, std::vector<ComplexVertex> vertices,
               std::vector<ComplexEdge> edges, std::vector<ComplexRay> rays) {
        ChowOneComplex c;
        try {
            c = ChowOneComplex::make(std::move(geometry), std::move(vertices), std::move(edges),
                                     std::move(rays));
        } catch (const std::invalid_argument &) {
            return;  // not realizable inside Sigma
        }
        if (!c.validate_embedding()) return;
        if (!is_balanced_at_every_vertex(c)) return;
        if (!is_stable(c)) return;
        Star asym = asymptotic_star(c);
        if (asym.rays != source.rays || asym.internal_markings != source.internal_markings) return;
        ChowOneComplex norm = translate_to_origin(c);
        if (seen.insert(norm.canonical_key()).second) out.push_back(std::move(norm));
    }
};

}  // namespace

DegenerationCatalog one_step_degenerations(const Star &s, long vertex_bound) {
    if (vertex_bound < 2 || vertex_bound > 3)
        throw std::invalid_argument("vertex bound must be 2 or 3");
    if (!is_balanced(s)) throw std::invalid_argument("unbalanced star rejected");

    CatalogBuilder builder{s};
    bool full = s.geometry.kind() == GeometryKind::FullBoundary;
    RationalPoint anchor = full ? RationalPoint{} : s.base;
    long k = s.internal_markings;
    int nr = static_cast<int>(s.rays.size());

    // trivial one-vertex degeneration
    {
        std::vector<ComplexRay> rays;
        for (const auto &r : s.rays) rays.push_back({0, r.dir, r.weight});
        builder.offer(s.geometry, make_vertices({anchor}, {k}), {}, std::move(rays));
    }

    auto parts_of = [&](const std::vector<int> &assign, int nparts) {
        std::vector<std::vector<WeightedRay>> parts(static_cast<size_t>(nparts));
        for (int i = 0; i < nr; ++i)
            parts[static_cast<size_t>(assign[static_cast<size_t>(i)])].push_back(
                s.rays[static_cast<size_t>(i)]);
        return parts;
    };

    auto ray_cells = [&](const std::vector<std::vector<WeightedRay>> &parts) {
        std::vector<ComplexRay> rays;
        for (int v = 0; v < static_cast<int>(parts.size()); ++v)
            for (const auto &r : parts[static_cast<size_t>(v)]) rays.push_back({v, r.dir, r.weight});
        return rays;
    };

    std::vector<std::vector<long>> mark_splits2, mark_splits3;
    {
        std::vector<long> cur;
        weak_compositions(k, 2, cur, mark_splits2);
        weak_compositions(k, 3, cur, mark_splits3);
    }

    // two vertices, one bounded edge
    std::vector<int> assign(static_cast<size_t>(nr), 0);
    auto next_assign = [&](int base) {
        for (int i = 0; i < nr; ++i) {
            if (assign[static_cast<size_t>(i)] + 1 < base) {
                ++assign[static_cast<size_t>(i)];
                std::fill(assign.begin(), assign.begin() + i, 0);
                return true;
            }
        }
        return false;
    };

    std::fill(assign.begin(), assign.end(), 0);
    do {
        auto parts = parts_of(assign, 2);
        LatticeVector s0 = weighted_sum_of(parts[0]);
        if (s0.is_zero()) continue;  // disconnected split
        auto [u, w] = primitive_part(-s0);
        for (const auto &marks : mark_splits2) {
            std::vector<RationalPoint> pos = {anchor, anchor + RationalPoint(u)};
            std::vector<ComplexEdge> edges = {{0, 1, static_cast<long>(w.get_si())}};
            builder.offer(s.geometry, make_vertices(pos, marks), edges, ray_cells(parts));
        }
    } while (next_assign(2));

    if (vertex_bound >= 3 && nr + k >= 2) {
        // three vertices: paths (vertex 1 in the middle) and triangles
        std::fill(assign.begin(), assign.end(), 0);
        do {
            auto parts = parts_of(assign, 3);
            std::array<LatticeVector, 3> S = {weighted_sum_of(parts[0]), weighted_sum_of(parts[1]),
                                              weighted_sum_of(parts[2])};

            // path: ends 0 and 2, center 1
            for (int e0 = 0; e0 < 3; ++e0)
                for (int e2 = e0 + 1; e2 < 3; ++e2) {
                    int center = 3 - e0 - e2;
                    if (S[static_cast<size_t>(e0)].is_zero() || S[static_cast<size_t>(e2)].is_zero())
                        continue;
                    auto [u0, w0] = primitive_part(-S[static_cast<size_t>(e0)]);
                    auto [u2, w2] = primitive_part(-S[static_cast<size_t>(e2)]);
                    RationalPoint p_center = anchor + RationalPoint(u0);
                    RationalPoint p_far = p_center - RationalPoint(u2);
                    for (const auto &marks : mark_splits3) {
                        // reorder data so vertex ids are 0 = end0, 1 = center, 2 = end2
                        std::vector<std::vector<WeightedRay>> p3 = {
                            parts[static_cast<size_t>(e0)], parts[static_cast<size_t>(center)],
                            parts[static_cast<size_t>(e2)]};
                        std::vector<long> m3 = {marks[static_cast<size_t>(e0)],
                                                marks[static_cast<size_t>(center)],
                                                marks[static_cast<size_t>(e2)]};
                        std::vector<ComplexEdge> edges = {{0, 1, static_cast<long>(w0.get_si())},
                                                          {2, 1, static_cast<long>(w2.get_si())}};
                        builder.offer(s.geometry,
                                      make_vertices({anchor, p_center, p_far}, m3), edges,
                                      ray_cells(p3));
                    }
                }

            // triangle on the cycle 0 -> 1 -> 2 -> 0. Positive closure forces
            // the free edge vector E01 = a*S1 - b*S0 with a, b > 0, a + b < 1,
            // i.e. an interior point of the triangle {0, S1, -S0}: a finite box.
            if (lattice_rank(IntegerMatrix::from_row_vectors({S[0], S[1]})) == 2) {
                auto lo_hi = [&](int c) {
                    Integer zero(0), s1c = S[1][c], ms0c = -S[0][c];
                    Integer lo = std::min(zero, std::min(s1c, ms0c));
                    Integer hi = std::max(zero, std::max(s1c, ms0c));
                    return std::pair<long, long>(lo.get_si(), hi.get_si());
                };
                auto [xlo, xhi] = lo_hi(0);
                auto [ylo, yhi] = lo_hi(1);
                auto [zlo, zhi] = lo_hi(2);
                for (long ex = xlo; ex <= xhi; ++ex)
                    for (long ey = ylo; ey <= yhi; ++ey)
                        for (long ez = zlo; ez <= zhi; ++ez) {
                            LatticeVector e01(ex, ey, ez);
                            if (e01.is_zero()) continue;
                            auto ab = rational_solve(
                                {{Rational(S[1].x), Rational(-S[0].x)},
                                 {Rational(S[1].y), Rational(-S[0].y)},
                                 {Rational(S[1].z), Rational(-S[0].z)}},
                                as_rationals(e01));
                            if (!ab) continue;
                            Rational a = (*ab)[0], b = (*ab)[1];
                            if (a <= 0 || b <= 0 || a + b >= 1) continue;
                            LatticeVector e12 = e01 - S[1];
                            LatticeVector e20 = e01 + S[0];
                            if (e12.is_zero() || e20.is_zero()) continue;
                            auto [u01, w01] = primitive_part(e01);
                            auto [u12, w12] = primitive_part(e12);
                            auto [u20, w20] = primitive_part(e20);
                            // minimal positive integral closure of the cycle
                            IntegerMatrix dirs(3, 3);
                            for (int r = 0; r < 3; ++r) {
                                dirs.at(r, 0) = u01[r];
                                dirs.at(r, 1) = u12[r];
                                dirs.at(r, 2) = u20[r];
                            }
                            IntegerMatrix ker = kernel_basis(dirs);
                            if (ker.rows() != 1) continue;
                            Integer k0 = ker.at(0, 0), k1 = ker.at(0, 1), k2 = ker.at(0, 2);
                            if (k0 == 0 || k1 == 0 || k2 == 0) continue;
                            if (k0 < 0) { k0 = -k0; k1 = -k1; k2 = -k2; }
                            if (k1 < 0 || k2 < 0) continue;
                            RationalPoint p1 = anchor + RationalPoint(u01 * k0);
                            RationalPoint p2 = p1 + RationalPoint(u12 * k1);
                            for (const auto &marks : mark_splits3) {
                                std::vector<ComplexEdge> edges = {
                                    {0, 1, static_cast<long>(w01.get_si())},
                                    {1, 2, static_cast<long>(w12.get_si())},
                                    {2, 0, static_cast<long>(w20.get_si())}};
                                builder.offer(s.geometry,
                                              make_vertices({anchor, p1, p2}, marks), edges,
                                              ray_cells(parts));
                            }
                        }
            }
        } while (next_assign(3));
    }

    DegenerationCatalog cat;
    cat.source = s;
    cat.vertex_bound = vertex_bound;
    cat.complexes = std::move(builder.out);
    return cat;
}

std::vector<ChowOneComplex> enumerate_4valent_curves(long n, FourValentCase which) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    ElementaryGeometry g = ElementaryGeometry::full_boundary();
    std::vector<ChowOneComplex> out;
    if (which == FourValentCase::I) {
        std::vector<ComplexVertex> vs(2);
        vs[0].position = RationalPoint(0, 0, 0);
        vs[1].position = RationalPoint(1, 1, n);
        out.push_back(ChowOneComplex::make(
            g, vs, {{0, 1, 1}},
            {{0, LatticeVector(1, 0, 0), 1},
             {0, LatticeVector(-2, -1, -n), 1},
             {1, LatticeVector(0, 1, 0), 1},
             {1, LatticeVector(1, 0, n), 1}}));
        return out;
    }
    // Case II, type I: bounded edge along (2,0,n)
    {
        auto [u, w] = primitive_part(LatticeVector(2, 0, n));
        std::vector<ComplexVertex> vs(2);
        vs[0].position = RationalPoint(0, 0, 0);
        vs[1].position = RationalPoint(u);
        out.push_back(ChowOneComplex::make(
            g, vs, {{0, 1, static_cast<long>(w.get_si())}},
            {{0, LatticeVector(0, 1, 0), 1},
             {0, LatticeVector(-2, -1, -n), 1},
             {1, LatticeVector(1, 0, 0), 1},
             {1, LatticeVector(1, 0, n), 1}}));
    }
    // Case II, type II(n1, n2): triangle with a vertical bounded edge
    for (long n2 = 1; 2 * n2 < n; ++n2) {
        long n1 = n - n2;
        std::vector<ComplexVertex> vs(3);
        vs[0].position = RationalPoint(0, 0, 0);
        vs[1].position = RationalPoint(1, 0, n2);
        vs[2].position = RationalPoint(1, 0, n1);
        out.push_back(ChowOneComplex::make(
            g, vs,
            {{0, 1, 1}, {0, 2, 1}, {1, 2, n2}},
            {{0, LatticeVector(0, 1, 0), 1},
             {0, LatticeVector(-2, -1, -n), 1},
             {1, LatticeVector(1, 0, 0), 1},
             {2, LatticeVector(1, 0, n), 1}}));
    }
    return out;
}

namespace {

bool weights_match(const std::vector<WeightedRay> &a, const std::vector<WeightedRay> &b) {
    std::multiset<long> wa, wb;
    for (const auto &r : a) wa.insert(r.weight);
    for (const auto &r : b) wb.insert(r.weight);
    return wa == wb;
}

bool integral_point(const RationalPoint &p) { return p.is_integral(); }

// Does the weight-respecting bijection a.rays[i] -> b.rays[perm[i]] extend to
// an element of GL3(Z)? Criterion: the induced linear map carries the
// saturation of span(a dirs) isomorphically onto the saturation of span(b dirs);
// any complement then extends it to an automorphism of Z^3.
bool bijection_extends(const Star &a, const Star &b, const std::vector<int> &perm) {
    std::vector<LatticeVector> va, vb;
    for (const auto &r : a.rays) va.push_back(r.dir);
    for (size_t i = 0; i < perm.size(); ++i)
        vb.push_back(b.rays[static_cast<size_t>(perm[i])].dir);

    IntegerMatrix stack_a = IntegerMatrix::from_row_vectors(va);
    int rank = lattice_rank(stack_a);
    // independent subset of va
    std::vector<int> basis_idx;
    std::vector<LatticeVector> basis;
    for (size_t i = 0; i < va.size() && static_cast<int>(basis.size()) < rank; ++i) {
        std::vector<LatticeVector> trial = basis;
        trial.push_back(va[i]);
        if (lattice_rank(IntegerMatrix::from_row_vectors(trial)) ==
            static_cast<int>(trial.size())) {
            basis.push_back(va[i]);
            basis_idx.push_back(static_cast<int>(i));
        }
    }
    // consistency: every va[j] must map compatibly
    std::vector<std::vector<Rational>> cols(3, std::vector<Rational>(static_cast<size_t>(rank)));
    for (int c = 0; c < rank; ++c) {
        cols[0][static_cast<size_t>(c)] = Rational(basis[static_cast<size_t>(c)].x);
        cols[1][static_cast<size_t>(c)] = Rational(basis[static_cast<size_t>(c)].y);
        cols[2][static_cast<size_t>(c)] = Rational(basis[static_cast<size_t>(c)].z);
    }
    auto image_of = [&](const LatticeVector &v) -> std::optional<std::vector<Rational>> {
        auto coeffs = rational_solve(cols, as_rationals(v));
        if (!coeffs) return std::nullopt;
        std::vector<Rational> img = {Rational(0), Rational(0), Rational(0)};
        for (int c = 0; c < rank; ++c) {
            const LatticeVector &w = vb[static_cast<size_t>(basis_idx[static_cast<size_t>(c)])];
            img[0] += (*coeffs)[static_cast<size_t>(c)] * Rational(w.x);
            img[1] += (*coeffs)[static_cast<size_t>(c)] * Rational(w.y);
            img[2] += (*coeffs)[static_cast<size_t>(c)] * Rational(w.z);
        }
        return img;
    };
    for (size_t j = 0; j < va.size(); ++j) {
        auto img = image_of(va[j]);
        if (!img) return false;
        if ((*img)[0] != Rational(vb[j].x) || (*img)[1] != Rational(vb[j].y) ||
            (*img)[2] != Rational(vb[j].z))
            return false;
    }
    // saturation condition
    IntegerMatrix sat_a = saturation_row_basis(stack_a);
    IntegerMatrix sat_b = saturation_row_basis(IntegerMatrix::from_row_vectors(vb));
    if (sat_a.rows() != sat_b.rows()) return false;
    IntegerMatrix transition(sat_a.rows(), sat_a.rows());
    for (int r = 0; r < sat_a.rows(); ++r) {
        LatticeVector row = sat_a.row3(r);
        auto img = image_of(row);
        if (!img) return false;
        std::vector<Integer> int_img(3);
        for (int c = 0; c < 3; ++c) {
            if ((*img)[static_cast<size_t>(c)].get_den() != 1) return false;
            int_img[static_cast<size_t>(c)] = (*img)[static_cast<size_t>(c)].get_num();
        }
        auto coords = coordinates_in_row_basis(sat_b, int_img);
        if (!coords) return false;
        for (int c = 0; c < sat_a.rows(); ++c) transition.at(r, c) = (*coords)[static_cast<size_t>(c)];
    }
    Integer d = transition.det();
    return d == 1 || d == -1;
}

}  // namespace

bool stars_equivalent(const Star &a, const Star &b) {
    if (!(a.geometry == b.geometry)) return false;
    if (a.internal_markings != b.internal_markings) return false;
    if (a.rays.size() != b.rays.size()) return false;
    if (!weights_match(a.rays, b.rays)) return false;

    if (a.geometry.kind() != GeometryKind::FullBoundary) {
        if (a.rays != b.rays) return false;
        RationalPoint d = b.base - a.base;
        if (!integral_point(d)) return false;
        TranslationGroup g = a.geometry.translation_group();
        if (d.is_zero()) return true;
        if (g.rank == 0) return false;
        IntegerMatrix gens = IntegerMatrix::from_row_vectors(g.generators);
        return coordinates_in_row_basis(
                   gens, {d.x.get_num(), d.y.get_num(), d.z.get_num()})
            .has_value();
    }

    // full boundary: GL3(Z) x integral translations
    if (!integral_point(a.base) || !integral_point(b.base))
        if (!(a.base == b.base)) return false;
    int n = static_cast<int>(a.rays.size());
    if (n == 0) return true;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = a.rays[static_cast<size_t>(i)].weight ==
                 b.rays[static_cast<size_t>(perm[static_cast<size_t>(i)])].weight;
        if (!ok) continue;
        if (bijection_extends(a, b, perm)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<Star> smaller_stars(const Star &s, long depth) {
    if (depth < 1) throw std::invalid_argument("depth must be positive");
    if (!is_balanced(s)) throw std::invalid_argument("unbalanced star rejected");
    std::vector<Star> found;
    std::vector<Star> frontier = {s};
    auto known = [&](const Star &w) {
        if (stars_equivalent(w, s)) return true;
        for (const auto &f : found)
            if (stars_equivalent(w, f)) return true;
        return false;
    };
    for (long round = 0; round < depth; ++round) {
        std::vector<Star> next;
        for (const auto &star : frontier) {
            DegenerationCatalog cat = one_step_degenerations(star, 2);
            for (const auto &complex : cat.complexes) {
                for (int v = 0; v < static_cast<int>(complex.vertices.size()); ++v) {
                    Star w = star_at_vertex(complex, v);
                    if (w.geometry.kind() == GeometryKind::FullBoundary && w.base.is_integral()) {
                        Star zero_based =
                            Star::make(w.geometry, RationalPoint{}, w.rays, w.internal_markings);
                        w = zero_based;
                    }
                    if (known(w)) continue;
                    found.push_back(w);
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return found;
}

}  // namespace gwpt
