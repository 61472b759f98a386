#include "gwpt/stars.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gwpt {

namespace {

Rational rat(const Integer &z) { return Rational(z); }

RationalPoint as_point(const LatticeVector &v) { return {rat(v.x), rat(v.y), rat(v.z)}; }

}  // namespace

Star Star::make(ElementaryGeometry geometry, RationalPoint base, std::vector<WeightedRay> rays,
                long internal_markings) {
    if (!geometry.contains_point(base))
        throw std::invalid_argument("star base outside the tropicalization");
    if (internal_markings < 0) throw std::invalid_argument("negative marking count");
    std::map<LatticeVector, long> merged;
    for (const auto &r : rays) {
        if (r.weight < 1) throw std::invalid_argument("ray weight must be positive");
        if (r.dir.is_zero() || primitive_part(r.dir).second != 1)
            throw std::invalid_argument("ray direction must be primitive");
        if (!geometry.admissible_direction(base, r.dir))
            throw std::invalid_argument("ray direction not admissible at base");
        merged[r.dir] += r.weight;
    }
    Star s;
    s.geometry = std::move(geometry);
    s.base = std::move(base);
    for (const auto &[d, w] : merged) s.rays.push_back({d, w});
    s.internal_markings = internal_markings;
    return s;
}

LatticeVector Star::weighted_sum() const {
    LatticeVector acc;
    for (const auto &r : rays) acc = acc + r.dir * Integer(r.weight);
    return acc;
}

long Star::total_weight() const {
    long t = 0;
    for (const auto &r : rays) t += r.weight;
    return t;
}

std::string Star::to_string() const {
    std::ostringstream out;
    out << "star@" << base.to_string() << " [";
    for (size_t i = 0; i < rays.size(); ++i) {
        if (i) out << ", ";
        out << rays[i].dir.to_string() << "x" << rays[i].weight;
    }
    out << "] k=" << internal_markings;
    return out.str();
}

ChowOneComplex star_to_complex(const Star &s) {
    ComplexVertex v;
    v.position = s.base;
    for (long i = 1; i <= s.internal_markings; ++i) v.markings.insert(i);
    std::vector<ComplexRay> rays;
    for (const auto &r : s.rays) rays.push_back({0, r.dir, r.weight});
    return ChowOneComplex::make(s.geometry, {v}, {}, std::move(rays));
}

ChowOneComplex ChowOneComplex::make(ElementaryGeometry geometry,
                                    std::vector<ComplexVertex> vertices,
                                    std::vector<ComplexEdge> edges, std::vector<ComplexRay> rays,
                                    bool allow_disconnected) {
    ChowOneComplex c;
    c.geometry = std::move(geometry);
    c.vertices = std::move(vertices);
    c.edges = std::move(edges);
    c.rays = std::move(rays);
    c.allow_disconnected = allow_disconnected;
    if (c.vertices.empty()) throw std::invalid_argument("complex needs at least one vertex");
    int n = static_cast<int>(c.vertices.size());
    std::set<long> seen_markings;
    for (int i = 0; i < n; ++i) {
        if (!c.geometry.contains_point(c.vertices[i].position))
            throw std::invalid_argument("vertex outside the tropicalization");
        for (int j = i + 1; j < n; ++j)
            if (c.vertices[i].position == c.vertices[j].position)
                throw std::invalid_argument("vertices at equal positions");
        for (long m : c.vertices[i].markings)
            if (!seen_markings.insert(m).second)
                throw std::invalid_argument("marking label used twice");
    }
    std::set<std::pair<int, int>> edge_pairs;
    for (const auto &e : c.edges) {
        if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n || e.tail == e.head)
            throw std::invalid_argument("bad edge endpoints");
        if (e.weight < 1) throw std::invalid_argument("edge weight must be positive");
        if (!edge_pairs.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)}).second)
            throw std::invalid_argument("duplicate edge");
    }
    for (const auto &r : c.rays) {
        if (r.vertex < 0 || r.vertex >= n) throw std::invalid_argument("bad ray vertex");
        if (r.weight < 1) throw std::invalid_argument("ray weight must be positive");
        if (r.dir.is_zero() || primitive_part(r.dir).second != 1)
            throw std::invalid_argument("ray direction must be primitive");
        // convex cone support: the full ray stays inside iff the direction does
        if (!c.geometry.contains_point(as_point(r.dir)))
            throw std::invalid_argument("ray leaves the tropicalization");
    }
    if (!allow_disconnected && !c.is_connected())
        throw std::invalid_argument("complex is disconnected (flag a disjoint union explicitly)");
    return c;
}

LatticeVector ChowOneComplex::edge_direction(const ComplexEdge &e) const {
    return primitive_direction(vertices[static_cast<size_t>(e.head)].position -
                               vertices[static_cast<size_t>(e.tail)].position);
}

bool ChowOneComplex::is_connected() const {
    int n = static_cast<int>(vertices.size());
    std::vector<int> parent(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    };
    for (const auto &e : edges) parent[static_cast<size_t>(find(e.tail))] = find(e.head);
    for (int i = 1; i < n; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

namespace {

// A segment or ray: base + t * dir with t in [0, length] or [0, inf).
struct CellGeom {
    RationalPoint base;
    LatticeVector dir;  // primitive
    bool bounded = true;
    Rational length;    // lattice length when bounded
    int v_at_0 = -1;    // vertex index at t = 0
    int v_at_end = -1;  // vertex index at t = length (bounded only)
};

Rational coord(const RationalPoint &p, int i) { return i == 0 ? p.x : (i == 1 ? p.y : p.z); }

// t with base + t*dir = p, if p is on the line.
std::optional<Rational> line_param(const CellGeom &c, const RationalPoint &p) {
    RationalPoint d = p - c.base;
    int pivot = -1;
    for (int i = 0; i < 3; ++i)
        if (c.dir[i] != 0) { pivot = i; break; }
    Rational t = coord(d, pivot) / rat(c.dir[pivot]);
    for (int i = 0; i < 3; ++i)
        if (coord(d, i) != t * rat(c.dir[i])) return std::nullopt;
    return t;
}

bool in_range(const CellGeom &c, const Rational &t) {
    if (t < 0) return false;
    return !c.bounded || t <= c.length;
}

bool is_endpoint_param(const CellGeom &c, const Rational &t) {
    if (t == 0) return true;
    return c.bounded && t == c.length;
}

// Distinct cells of an embedded complex may meet only in a shared vertex.
bool cells_compatible(const CellGeom &a, const CellGeom &b) {
    bool parallel = a.dir == b.dir || a.dir == -b.dir;
    if (parallel) {
        auto t0 = line_param(a, b.base);
        if (!t0) return true;  // parallel, different lines
        // 1D overlap on the common line, in a's parameter
        bool same_dir = a.dir == b.dir;
        Rational b_start = *t0;
        std::optional<Rational> b_end;
        if (b.bounded) b_end = same_dir ? Rational(b_start + b.length) : Rational(b_start - b.length);
        Rational lo = b_start, hi = b_start;
        bool lo_inf = false, hi_inf = false;
        if (b.bounded) {
            lo = std::min(b_start, *b_end);
            hi = std::max(b_start, *b_end);
        } else if (same_dir) {
            hi_inf = true;
        } else {
            lo_inf = true;
        }
        Rational a_lo(0), a_hi = a.bounded ? a.length : Rational(0);
        bool a_hi_inf = !a.bounded;
        Rational ov_lo = lo_inf ? a_lo : std::max(a_lo, lo);
        bool ov_hi_inf = a_hi_inf && hi_inf;
        Rational ov_hi;
        if (!ov_hi_inf) ov_hi = a_hi_inf ? hi : (hi_inf ? a_hi : std::min(a_hi, hi));
        if (ov_hi_inf) return false;  // unbounded common overlap
        if (ov_lo > ov_hi) return true;
        if (ov_lo != ov_hi) return false;  // a whole shared segment
        // single common point: must be an endpoint of both cells
        Rational t = ov_lo;
        if (!is_endpoint_param(a, t)) return false;
        Rational tb = same_dir ? Rational(t - b_start) : Rational(b_start - t);
        return is_endpoint_param(b, tb);
    }
    // Non-parallel: solve t*a.dir - s*b.dir = b.base - a.base.
    RationalPoint w = b.base - a.base;
    int i = -1, j = -1;
    Rational det;
    for (int r = 0; r < 3 && i < 0; ++r)
        for (int c = r + 1; c < 3; ++c) {
            Rational d = rat(a.dir[r]) * rat(-b.dir[c]) - rat(-b.dir[r]) * rat(a.dir[c]);
            if (d != 0) { i = r; j = c; det = d; break; }
        }
    Rational t = (coord(w, i) * rat(-b.dir[j]) - rat(-b.dir[i]) * coord(w, j)) / det;
    Rational s = (rat(a.dir[i]) * coord(w, j) - coord(w, i) * rat(a.dir[j])) / det;
    for (int r = 0; r < 3; ++r)
        if (t * rat(a.dir[r]) - s * rat(b.dir[r]) != coord(w, r)) return true;  // skew lines
    if (!in_range(a, t) || !in_range(b, s)) return true;
    return is_endpoint_param(a, t) && is_endpoint_param(b, s);
}

std::vector<CellGeom> complex_cells(const ChowOneComplex &c) {
    std::vector<CellGeom> cells;
    for (const auto &e : c.edges) {
        CellGeom g;
        g.base = c.vertices[static_cast<size_t>(e.tail)].position;
        g.dir = c.edge_direction(e);
        g.bounded = true;
        RationalPoint d = c.vertices[static_cast<size_t>(e.head)].position - g.base;
        int pivot = 0;
        while (g.dir[pivot] == 0) ++pivot;
        g.length = coord(d, pivot) / rat(g.dir[pivot]);
        g.v_at_0 = e.tail;
        g.v_at_end = e.head;
        cells.push_back(std::move(g));
    }
    for (const auto &r : c.rays) {
        CellGeom g;
        g.base = c.vertices[static_cast<size_t>(r.vertex)].position;
        g.dir = r.dir;
        g.bounded = false;
        g.v_at_0 = r.vertex;
        cells.push_back(std::move(g));
    }
    return cells;
}

}  // namespace

bool ChowOneComplex::validate_embedding() const {
    auto cells = complex_cells(*this);
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j)
            if (!cells_compatible(cells[i], cells[j])) return false;
    // no vertex may sit in the interior of a cell it does not bound
    for (size_t vi = 0; vi < vertices.size(); ++vi)
        for (const auto &cell : cells) {
            if (cell.v_at_0 == static_cast<int>(vi) || cell.v_at_end == static_cast<int>(vi))
                continue;
            auto t = line_param(cell, vertices[vi].position);
            if (t && in_range(cell, *t)) return false;
        }
    return true;
}

std::string ChowOneComplex::canonical_key() const {
    // order vertices by position, remap indices, serialize
    int n = static_cast<int>(vertices.size());
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return vertices[static_cast<size_t>(a)].position < vertices[static_cast<size_t>(b)].position;
    });
    std::vector<int> rank(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rank[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
    std::ostringstream out;
    out << geometry.kind_name() << "|";
    for (int i = 0; i < n; ++i) {
        const auto &v = vertices[static_cast<size_t>(order[static_cast<size_t>(i)])];
        out << v.position.to_string() << (v.carries_class ? "c" : "") << "{";
        out << v.markings.size() << "}";
    }
    std::vector<std::string> parts;
    for (const auto &e : edges) {
        int a = rank[static_cast<size_t>(e.tail)], b = rank[static_cast<size_t>(e.head)];
        parts.push_back("E" + std::to_string(std::min(a, b)) + "-" + std::to_string(std::max(a, b)) +
                        "w" + std::to_string(e.weight));
    }
    for (const auto &r : rays)
        parts.push_back("R" + std::to_string(rank[static_cast<size_t>(r.vertex)]) +
                        r.dir.to_string() + "w" + std::to_string(r.weight));
    std::sort(parts.begin(), parts.end());
    for (const auto &p : parts) out << p << ";";
    return out.str();
}

bool is_balanced(const Star &s) {
    LatticeVector sum = s.weighted_sum();
    if (sum.is_zero()) return true;
    return in_rational_span(s.geometry.collapsed_directions(s.base), sum);
}

bool is_balanced_at_every_vertex(const ChowOneComplex &c) {
    for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v)
        if (!is_balanced(star_at_vertex(c, v))) return false;
    return true;
}

Star transform_star(const IntegerMatrix &U, const Star &s) {
    if (s.geometry.kind() != GeometryKind::FullBoundary)
        throw std::invalid_argument("GL3(Z) acts on full-boundary stars only");
    Integer d = U.det();
    if (d != 1 && d != -1) throw std::invalid_argument("transform must be unimodular");
    std::vector<WeightedRay> rays;
    for (const auto &r : s.rays) rays.push_back({U.apply3(r.dir), r.weight});
    RationalPoint base(U.at(0, 0) * s.base.x + U.at(0, 1) * s.base.y + U.at(0, 2) * s.base.z,
                       U.at(1, 0) * s.base.x + U.at(1, 1) * s.base.y + U.at(1, 2) * s.base.z,
                       U.at(2, 0) * s.base.x + U.at(2, 1) * s.base.y + U.at(2, 2) * s.base.z);
    return Star::make(s.geometry, base, std::move(rays), s.internal_markings);
}

MultiplicityData multiplicity_and_normalize(const Star &s) {
    if (s.geometry.kind() != GeometryKind::FullBoundary)
        throw std::invalid_argument("multiplicity is defined for full-boundary stars");
    if (s.rays.size() != 3) throw std::invalid_argument("star is not trivalent");
    if (!is_balanced(s)) throw std::invalid_argument("star is not balanced");
    std::vector<LatticeVector> w;
    for (const auto &r : s.rays) w.push_back(r.dir * Integer(r.weight));

    SmithDecomposition snf =
        smith_normal_form(IntegerMatrix::from_row_vectors({w[0], w[1]}));
    Integer d1 = snf.D.at(0, 0), d2 = snf.D.at(1, 1);
    if (d2 == 0) throw std::invalid_argument("weighted rays do not span a rank-2 lattice");

    MultiplicityData out;
    Integer m_int = d2 / d1, n_big = d1 * d2;
    out.n = d1.get_si();
    out.m = m_int.get_si();
    out.N = n_big.get_si();

    // Hunt for A in GL3(Z) with A * {w} = {(d1,0,0), (0,d2,0), (-d1,-d2,0)}.
    std::vector<LatticeVector> target = {LatticeVector(d1, Integer(0), Integer(0)),
                                         LatticeVector(Integer(0), d2, Integer(0)),
                                         LatticeVector(-d1, -d2, Integer(0))};
    for (int i = 0; i < 3 && !out.U; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            // columns w[i], w[j]
            IntegerMatrix W(3, 2);
            for (int r = 0; r < 3; ++r) {
                W.at(r, 0) = w[static_cast<size_t>(i)][r];
                W.at(r, 1) = w[static_cast<size_t>(j)][r];
            }
            SmithDecomposition c = smith_normal_form(W);
            IntegerMatrix planar = c.U * W;  // rows 0,1 hold the 2x2 block, row 2 is zero
            Integer p11 = planar.at(0, 0), p12 = planar.at(0, 1);
            Integer p21 = planar.at(1, 0), p22 = planar.at(1, 1);
            Integer det = p11 * p22 - p12 * p21;
            if (abs(det) != d1 * d2) continue;
            // B = diag(d1,d2) * P^{-1} must be integral
            Integer b11 = d1 * p22, b12 = -d1 * p12, b21 = -d2 * p21, b22 = d2 * p11;
            if (b11 % det != 0 || b12 % det != 0 || b21 % det != 0 || b22 % det != 0) continue;
            IntegerMatrix B3 = IntegerMatrix::identity(3);
            B3.at(0, 0) = b11 / det;
            B3.at(0, 1) = b12 / det;
            B3.at(1, 0) = b21 / det;
            B3.at(1, 1) = b22 / det;
            IntegerMatrix A = B3 * c.U;
            Integer ad = A.det();
            if (ad != 1 && ad != -1) continue;
            std::vector<LatticeVector> image = {A.apply3(w[0]), A.apply3(w[1]), A.apply3(w[2])};
            std::sort(image.begin(), image.end());
            std::vector<LatticeVector> want = target;
            std::sort(want.begin(), want.end());
            if (image == want) {
                out.U = A;
                break;
            }
        }
    }
    return out;
}

namespace {

// Rows of `basis` span a saturated lattice; returns the quotient map by the
// primitive vector v (in lattice coordinates) as a (k-1) x k matrix.
IntegerMatrix quotient_by(const IntegerMatrix &basis, const LatticeVector &v) {
    int k = basis.rows();
    auto coords = coordinates_in_row_basis(basis, {v.x, v.y, v.z});
    if (!coords) throw std::runtime_error("vector not in its cone lattice");
    IntegerMatrix col(k, 1);
    for (int i = 0; i < k; ++i) col.at(i, 0) = (*coords)[static_cast<size_t>(i)];
    SmithDecomposition snf = smith_normal_form(col);
    if (snf.D.at(0, 0) != 1) throw std::runtime_error("direction not primitive in cone lattice");
    IntegerMatrix q(k - 1, k);
    for (int i = 1; i < k; ++i)
        for (int j = 0; j < k; ++j) q.at(i - 1, j) = snf.U.at(i, j);
    return q;
}

// Rows: image of each `inner` basis vector under the quotient of `outer` by v.
IntegerMatrix quotient_block(const IntegerMatrix &inner, const IntegerMatrix &outer,
                             const LatticeVector &v) {
    IntegerMatrix q = quotient_by(outer, v);  // (k-1) x k
    IntegerMatrix block(inner.rows(), q.rows());
    for (int r = 0; r < inner.rows(); ++r) {
        auto coords = coordinates_in_row_basis(outer, inner.row(r));
        if (!coords) throw std::runtime_error("cone lattice inclusion failed");
        auto image = q.apply(*coords);
        for (int c = 0; c < q.rows(); ++c) block.at(r, c) = image[static_cast<size_t>(c)];
    }
    return block;
}

IntegerMatrix rows_matrix(const std::vector<LatticeVector> &rows) {
    return IntegerMatrix::from_row_vectors(rows);
}

}  // namespace

bool is_visible_star(const Star &s) {
    auto lp = s.geometry.cone_lattice(s.base);
    if (lp.empty()) return true;
    IntegerMatrix lp_m = rows_matrix(lp);
    int total_cols = 0;
    std::vector<IntegerMatrix> blocks;
    for (const auto &r : s.rays) {
        IntegerMatrix lq = rows_matrix(s.geometry.cone_lattice_along(s.base, r.dir));
        blocks.push_back(quotient_block(lp_m, lq, r.dir));
        total_cols += blocks.back().cols();
    }
    IntegerMatrix map(lp_m.rows(), total_cols);
    int off = 0;
    for (const auto &b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) map.at(i, off + j) = b.at(i, j);
        off += b.cols();
    }
    return kernel_basis(map.transpose()).rows() == 0;
}

bool is_visible_complex(const ChowOneComplex &c) {
    int nv = static_cast<int>(c.vertices.size());
    std::vector<IntegerMatrix> lv;
    std::vector<int> offset(static_cast<size_t>(nv) + 1, 0);
    for (int v = 0; v < nv; ++v) {
        lv.push_back(rows_matrix(c.geometry.cone_lattice(c.vertices[static_cast<size_t>(v)].position)));
        offset[static_cast<size_t>(v) + 1] = offset[static_cast<size_t>(v)] + lv.back().rows();
    }
    int dim = offset[static_cast<size_t>(nv)];
    if (dim == 0) return true;

    struct EdgeData {
        IntegerMatrix tail_block, head_block;
    };
    std::vector<EdgeData> edata;
    int eq_cols = 0;
    for (const auto &e : c.edges) {
        RationalPoint mid{(c.vertices[static_cast<size_t>(e.tail)].position.x +
                           c.vertices[static_cast<size_t>(e.head)].position.x) / 2,
                          (c.vertices[static_cast<size_t>(e.tail)].position.y +
                           c.vertices[static_cast<size_t>(e.head)].position.y) / 2,
                          (c.vertices[static_cast<size_t>(e.tail)].position.z +
                           c.vertices[static_cast<size_t>(e.head)].position.z) / 2};
        IntegerMatrix le = rows_matrix(c.geometry.cone_lattice(mid));
        LatticeVector dir = c.edge_direction(e);
        EdgeData d{quotient_block(lv[static_cast<size_t>(e.tail)], le, dir),
                   quotient_block(lv[static_cast<size_t>(e.head)], le, dir)};
        eq_cols += d.tail_block.cols();
        edata.push_back(std::move(d));
    }

    // L_Gamma = left kernel of the edge-compatibility map on prod_V L_V
    IntegerMatrix compat(dim, eq_cols);
    int col = 0;
    for (size_t ei = 0; ei < edata.size(); ++ei) {
        const auto &e = c.edges[ei];
        const auto &d = edata[ei];
        for (int i = 0; i < d.tail_block.rows(); ++i)
            for (int j = 0; j < d.tail_block.cols(); ++j)
                compat.at(offset[static_cast<size_t>(e.tail)] + i, col + j) = d.tail_block.at(i, j);
        for (int i = 0; i < d.head_block.rows(); ++i)
            for (int j = 0; j < d.head_block.cols(); ++j)
                compat.at(offset[static_cast<size_t>(e.head)] + i, col + j) =
                    compat.at(offset[static_cast<size_t>(e.head)] + i, col + j) - d.head_block.at(i, j);
        col += d.tail_block.cols();
    }
    IntegerMatrix l_gamma = kernel_basis(compat.transpose());
    if (l_gamma.rows() == 0) return true;

    // g_Gamma: common edge images plus ray images
    int ray_cols = 0;
    std::vector<IntegerMatrix> ray_blocks;
    for (const auto &r : c.rays) {
        IntegerMatrix lq = rows_matrix(c.geometry.cone_lattice_along(
            c.vertices[static_cast<size_t>(r.vertex)].position, r.dir));
        ray_blocks.push_back(quotient_block(lv[static_cast<size_t>(r.vertex)], lq, r.dir));
        ray_cols += ray_blocks.back().cols();
    }
    IntegerMatrix g(dim, eq_cols + ray_cols);
    col = 0;
    for (size_t ei = 0; ei < edata.size(); ++ei) {
        const auto &e = c.edges[ei];
        const auto &d = edata[ei];
        for (int i = 0; i < d.tail_block.rows(); ++i)
            for (int j = 0; j < d.tail_block.cols(); ++j)
                g.at(offset[static_cast<size_t>(e.tail)] + i, col + j) = d.tail_block.at(i, j);
        col += d.tail_block.cols();
    }
    for (size_t ri = 0; ri < ray_blocks.size(); ++ri) {
        const auto &r = c.rays[ri];
        const auto &b = ray_blocks[ri];
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
                g.at(offset[static_cast<size_t>(r.vertex)] + i, col + j) = b.at(i, j);
        col += b.cols();
    }
    IntegerMatrix composite = l_gamma * g;
    return kernel_basis(composite.transpose()).rows() == 0;
}

Star asymptotic_star(const ChowOneComplex &c) {
    std::map<LatticeVector, long> dirs;
    for (const auto &r : c.rays) dirs[r.dir] += r.weight;
    std::set<long> labels;
    for (const auto &v : c.vertices) labels.insert(v.markings.begin(), v.markings.end());
    std::vector<WeightedRay> rays;
    for (const auto &[d, w] : dirs) rays.push_back({d, w});
    return Star::make(c.geometry, RationalPoint{}, std::move(rays),
                      static_cast<long>(labels.size()));
}

Star star_at_vertex(const ChowOneComplex &c, int vertex) {
    if (vertex < 0 || vertex >= static_cast<int>(c.vertices.size()))
        throw std::invalid_argument("unknown vertex");
    std::vector<WeightedRay> rays;
    for (const auto &e : c.edges) {
        if (e.tail == vertex)
            rays.push_back({c.edge_direction(e), e.weight});
        else if (e.head == vertex)
            rays.push_back({-c.edge_direction(e), e.weight});
    }
    for (const auto &r : c.rays)
        if (r.vertex == vertex) rays.push_back({r.dir, r.weight});
    return Star::make(c.geometry, c.vertices[static_cast<size_t>(vertex)].position, std::move(rays),
                      static_cast<long>(c.vertices[static_cast<size_t>(vertex)].markings.size()));
}

namespace {

struct Incidence {
    std::vector<int> edge_idx;
    std::vector<int> ray_idx;
};

Incidence incidence_at(const ChowOneComplex &c, int v) {
    Incidence inc;
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i)
        if (c.edges[static_cast<size_t>(i)].tail == v || c.edges[static_cast<size_t>(i)].head == v)
            inc.edge_idx.push_back(i);
    for (int i = 0; i < static_cast<int>(c.rays.size()); ++i)
        if (c.rays[static_cast<size_t>(i)].vertex == v) inc.ray_idx.push_back(i);
    return inc;
}

bool same_face_through(const ChowOneComplex &c, int v, const LatticeVector &d1,
                       const LatticeVector &d2) {
    const RationalPoint &p = c.vertices[static_cast<size_t>(v)].position;
    auto at = c.geometry.cone_lattice(p);
    auto along1 = c.geometry.cone_lattice_along(p, d1);
    auto along2 = c.geometry.cone_lattice_along(p, d2);
    return at == along1 && at == along2;
}

}  // namespace

bool vertex_is_erasable(const ChowOneComplex &c, int vertex, bool *weight_mismatch) {
    if (weight_mismatch) *weight_mismatch = false;
    const auto &vd = c.vertices[static_cast<size_t>(vertex)];
    if (vd.carries_class || !vd.markings.empty()) return false;
    Incidence inc = incidence_at(c, vertex);
    if (inc.edge_idx.size() + inc.ray_idx.size() != 2) return false;
    std::vector<std::pair<LatticeVector, long>> out;
    for (int i : inc.edge_idx) {
        const auto &e = c.edges[static_cast<size_t>(i)];
        LatticeVector d = c.edge_direction(e);
        out.push_back({e.tail == vertex ? d : -d, e.weight});
    }
    for (int i : inc.ray_idx)
        out.push_back({c.rays[static_cast<size_t>(i)].dir, c.rays[static_cast<size_t>(i)].weight});
    if (out[0].first != -out[1].first) return false;
    if (!same_face_through(c, vertex, out[0].first, out[1].first)) return false;
    if (out[0].second != out[1].second) {
        if (weight_mismatch) *weight_mismatch = true;
        return false;
    }
    return true;
}

bool is_stable(const ChowOneComplex &c) {
    for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
        bool mismatch = false;
        if (vertex_is_erasable(c, v, &mismatch) || mismatch) return false;
    }
    return true;
}

ChowOneComplex stabilize(const ChowOneComplex &c) {
    ChowOneComplex cur = c;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < static_cast<int>(cur.vertices.size()) && !changed; ++v) {
            bool mismatch = false;
            bool erasable = vertex_is_erasable(cur, v, &mismatch);
            if (mismatch)
                throw std::invalid_argument("weight mismatch at an erasable vertex");
            if (!erasable) continue;
            Incidence inc = incidence_at(cur, v);
            if (inc.edge_idx.empty()) continue;  // bare line keeps its representative vertex

            std::vector<ComplexVertex> nverts;
            std::vector<int> remap(cur.vertices.size(), -1);
            for (int i = 0; i < static_cast<int>(cur.vertices.size()); ++i) {
                if (i == v) continue;
                remap[static_cast<size_t>(i)] = static_cast<int>(nverts.size());
                nverts.push_back(cur.vertices[static_cast<size_t>(i)]);
            }
            std::vector<ComplexEdge> nedges;
            std::vector<ComplexRay> nrays;
            for (int i = 0; i < static_cast<int>(cur.edges.size()); ++i) {
                if (std::find(inc.edge_idx.begin(), inc.edge_idx.end(), i) != inc.edge_idx.end())
                    continue;
                const auto &e = cur.edges[static_cast<size_t>(i)];
                nedges.push_back({remap[static_cast<size_t>(e.tail)],
                                  remap[static_cast<size_t>(e.head)], e.weight});
            }
            for (int i = 0; i < static_cast<int>(cur.rays.size()); ++i) {
                if (std::find(inc.ray_idx.begin(), inc.ray_idx.end(), i) != inc.ray_idx.end())
                    continue;
                const auto &r = cur.rays[static_cast<size_t>(i)];
                nrays.push_back({remap[static_cast<size_t>(r.vertex)], r.dir, r.weight});
            }
            auto far_end = [&](int edge_idx) {
                const auto &e = cur.edges[static_cast<size_t>(edge_idx)];
                return e.tail == v ? e.head : e.tail;
            };
            long w = cur.edges[static_cast<size_t>(inc.edge_idx[0])].weight;
            if (inc.edge_idx.size() == 2) {
                nedges.push_back({remap[static_cast<size_t>(far_end(inc.edge_idx[0]))],
                                  remap[static_cast<size_t>(far_end(inc.edge_idx[1]))], w});
            } else {
                const auto &ray = cur.rays[static_cast<size_t>(inc.ray_idx[0])];
                nrays.push_back({remap[static_cast<size_t>(far_end(inc.edge_idx[0]))], ray.dir,
                                 ray.weight});
            }
            cur = ChowOneComplex::make(cur.geometry, std::move(nverts), std::move(nedges),
                                       std::move(nrays), cur.allow_disconnected);
            changed = true;
        }
    }
    return cur;
}

}  // namespace gwpt
