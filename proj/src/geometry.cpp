#include "gwpt/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwpt {

LatticeVector primitive_direction(const RationalPoint &delta) {
    if (delta.is_zero()) throw std::invalid_argument("primitive_direction of zero displacement");
    Integer l = lcm(lcm(delta.x.get_den(), delta.y.get_den()), delta.z.get_den());
    LatticeVector w(Integer(delta.x.get_num() * (l / delta.x.get_den())),
                    Integer(delta.y.get_num() * (l / delta.y.get_den())),
                    Integer(delta.z.get_num() * (l / delta.z.get_den())));
    return primitive_part(w).first;
}

ElementaryGeometry ElementaryGeometry::full_boundary() {
    ElementaryGeometry g;
    g.kind_ = GeometryKind::FullBoundary;
    return g;
}

ElementaryGeometry ElementaryGeometry::one_non_boundary(std::vector<std::array<Integer, 2>> psi) {
    ElementaryGeometry g;
    g.kind_ = GeometryKind::OneNonBoundary;
    if (psi.empty()) psi.push_back({Integer(0), Integer(0)});
    g.psi_ = std::move(psi);
    bool all_zero = std::all_of(g.psi_.begin(), g.psi_.end(),
                                [](const auto &f) { return f[0] == 0 && f[1] == 0; });
    if (all_zero) {
        g.subkind_ = GeometrySubkind::Straight;
    } else {
        std::vector<std::vector<Integer>> rows;
        for (const auto &f : g.psi_) rows.push_back({f[0], f[1]});
        g.subkind_ = lattice_rank(IntegerMatrix::from_rows(rows)) <= 1 ? GeometrySubkind::Ruled
                                                                       : GeometrySubkind::General;
    }
    g.collapsed_ = {LatticeVector(0, 0, 1)};
    return g;
}

ElementaryGeometry ElementaryGeometry::two_non_boundary(std::vector<Integer> psi1,
                                                        std::vector<Integer> psi2) {
    ElementaryGeometry g;
    g.kind_ = GeometryKind::TwoNonBoundary;
    if (psi1.empty()) psi1.push_back(Integer(0));
    if (psi2.empty()) psi2.push_back(Integer(0));
    g.psi1_ = std::move(psi1);
    g.psi2_ = std::move(psi2);
    auto all_zero = [](const std::vector<Integer> &v) {
        return std::all_of(v.begin(), v.end(), [](const Integer &a) { return a == 0; });
    };
    g.subkind_ = (all_zero(g.psi1_) && all_zero(g.psi2_)) ? GeometrySubkind::Straight
                                                          : GeometrySubkind::General;
    g.collapsed_ = {LatticeVector(0, 1, 0), LatticeVector(0, 0, 1)};
    return g;
}

ElementaryGeometry ElementaryGeometry::three_non_boundary() {
    ElementaryGeometry g;
    g.kind_ = GeometryKind::ThreeNonBoundary;
    g.collapsed_ = {LatticeVector(1, 0, 0), LatticeVector(0, 1, 0), LatticeVector(0, 0, 1)};
    return g;
}

namespace {

Rational psi_value(const std::vector<std::array<Integer, 2>> &psi, const Rational &x,
                   const Rational &y) {
    Rational best = Rational(psi[0][0]) * x + Rational(psi[0][1]) * y;
    for (size_t i = 1; i < psi.size(); ++i) {
        Rational v = Rational(psi[i][0]) * x + Rational(psi[i][1]) * y;
        if (v > best) best = v;
    }
    return best;
}

Rational psi1d_value(const std::vector<Integer> &psi, const Rational &x) {
    Rational best = Rational(psi[0]) * x;
    for (size_t i = 1; i < psi.size(); ++i) {
        Rational v = Rational(psi[i]) * x;
        if (v > best) best = v;
    }
    return best;
}

// Functionals attaining the max at (x, y); for the displaced point these get
// refined to the ones also maximal in the displacement direction.
template <typename F, typename Eval>
std::vector<F> argmax_set(const std::vector<F> &fs, Eval eval) {
    std::vector<F> out;
    Rational best;
    bool have = false;
    for (const auto &f : fs) {
        Rational v = eval(f);
        if (!have || v > best) {
            best = v;
            out.clear();
            out.push_back(f);
            have = true;
        } else if (v == best) {
            out.push_back(f);
        }
    }
    return out;
}

}  // namespace

void ElementaryGeometry::require_inside(const RationalPoint &p) const {
    if (!contains_point(p)) throw std::invalid_argument("point outside the tropicalization");
}

bool ElementaryGeometry::contains_point(const RationalPoint &p) const {
    switch (kind_) {
        case GeometryKind::FullBoundary:
            return true;
        case GeometryKind::OneNonBoundary:
            return p.z >= psi_value(psi_, p.x, p.y);
        case GeometryKind::TwoNonBoundary:
            return p.y >= psi1d_value(psi1_, p.x) && p.z >= psi1d_value(psi2_, p.x);
        case GeometryKind::ThreeNonBoundary:
            return p.x >= 0 && p.y >= 0 && p.z >= 0;
    }
    return false;
}

bool ElementaryGeometry::admissible_direction(const RationalPoint &p,
                                              const LatticeVector &v) const {
    require_inside(p);
    if (v.is_zero()) return false;
    RationalPoint d{Rational(v.x), Rational(v.y), Rational(v.z)};
    switch (kind_) {
        case GeometryKind::FullBoundary:
            return true;
        case GeometryKind::OneNonBoundary: {
            if (p.z > psi_value(psi_, p.x, p.y)) return true;
            auto active = argmax_set(psi_, [&](const std::array<Integer, 2> &f) {
                return Rational(f[0]) * p.x + Rational(f[1]) * p.y;
            });
            return d.z >= psi_value(active, d.x, d.y);
        }
        case GeometryKind::TwoNonBoundary: {
            if (p.y == psi1d_value(psi1_, p.x)) {
                auto a1 = argmax_set(psi1_, [&](const Integer &a) { return Rational(a) * p.x; });
                if (d.y < psi1d_value(a1, d.x)) return false;
            }
            if (p.z == psi1d_value(psi2_, p.x)) {
                auto a2 = argmax_set(psi2_, [&](const Integer &a) { return Rational(a) * p.x; });
                if (d.z < psi1d_value(a2, d.x)) return false;
            }
            return true;
        }
        case GeometryKind::ThreeNonBoundary:
            return (p.x > 0 || v.x >= 0) && (p.y > 0 || v.y >= 0) && (p.z > 0 || v.z >= 0);
    }
    return false;
}

IntegerMatrix ElementaryGeometry::active_constraint_rows(const RationalPoint &p,
                                                         const LatticeVector *v) const {
    std::vector<std::vector<Integer>> rows;
    RationalPoint d = v ? RationalPoint{Rational(v->x), Rational(v->y), Rational(v->z)}
                        : RationalPoint{};
    switch (kind_) {
        case GeometryKind::FullBoundary:
            break;
        case GeometryKind::OneNonBoundary: {
            if (p.z != psi_value(psi_, p.x, p.y)) break;
            auto active = argmax_set(psi_, [&](const std::array<Integer, 2> &f) {
                return Rational(f[0]) * p.x + Rational(f[1]) * p.y;
            });
            if (v) {
                // constraint survives the displacement only when v is tangent
                if (d.z != psi_value(active, d.x, d.y)) break;
                active = argmax_set(active, [&](const std::array<Integer, 2> &f) {
                    return Rational(f[0]) * d.x + Rational(f[1]) * d.y;
                });
            }
            for (const auto &f : active) rows.push_back({f[0], f[1], Integer(-1)});
            break;
        }
        case GeometryKind::TwoNonBoundary: {
            if (p.y == psi1d_value(psi1_, p.x)) {
                auto a1 = argmax_set(psi1_, [&](const Integer &a) { return Rational(a) * p.x; });
                bool live = true;
                if (v) {
                    if (d.y != psi1d_value(a1, d.x))
                        live = false;
                    else
                        a1 = argmax_set(a1, [&](const Integer &a) { return Rational(a) * d.x; });
                }
                if (live)
                    for (const auto &a : a1) rows.push_back({a, Integer(-1), Integer(0)});
            }
            if (p.z == psi1d_value(psi2_, p.x)) {
                auto a2 = argmax_set(psi2_, [&](const Integer &a) { return Rational(a) * p.x; });
                bool live = true;
                if (v) {
                    if (d.z != psi1d_value(a2, d.x))
                        live = false;
                    else
                        a2 = argmax_set(a2, [&](const Integer &a) { return Rational(a) * d.x; });
                }
                if (live)
                    for (const auto &a : a2) rows.push_back({a, Integer(0), Integer(-1)});
            }
            break;
        }
        case GeometryKind::ThreeNonBoundary: {
            const Rational *pc[3] = {&p.x, &p.y, &p.z};
            const Rational *dc[3] = {&d.x, &d.y, &d.z};
            for (int i = 0; i < 3; ++i) {
                if (*pc[i] != 0) continue;
                if (v && *dc[i] != 0) continue;
                std::vector<Integer> r(3, Integer(0));
                r[static_cast<size_t>(i)] = 1;
                rows.push_back(std::move(r));
            }
            break;
        }
    }
    if (rows.empty()) return IntegerMatrix(0, 3);
    return IntegerMatrix::from_rows(rows);
}

TranslationGroup ElementaryGeometry::translation_group() const {
    std::vector<std::vector<Integer>> rows;
    switch (kind_) {
        case GeometryKind::FullBoundary:
            break;
        case GeometryKind::OneNonBoundary:
            for (const auto &f : psi_) rows.push_back({f[0], f[1], Integer(-1)});
            break;
        case GeometryKind::TwoNonBoundary:
            for (const auto &a : psi1_) rows.push_back({a, Integer(-1), Integer(0)});
            for (const auto &a : psi2_) rows.push_back({a, Integer(0), Integer(-1)});
            break;
        case GeometryKind::ThreeNonBoundary:
            rows = {{Integer(1), Integer(0), Integer(0)},
                    {Integer(0), Integer(1), Integer(0)},
                    {Integer(0), Integer(0), Integer(1)}};
            break;
    }
    IntegerMatrix constraints =
        rows.empty() ? IntegerMatrix(0, 3) : IntegerMatrix::from_rows(rows);
    TranslationGroup g;
    g.generators = integer_kernel(constraints);
    g.rank = static_cast<int>(g.generators.size());
    return g;
}

std::vector<LatticeVector> ElementaryGeometry::cone_lattice(const RationalPoint &p) const {
    require_inside(p);
    return integer_kernel(active_constraint_rows(p, nullptr));
}

std::vector<LatticeVector> ElementaryGeometry::cone_lattice_along(const RationalPoint &p,
                                                                  const LatticeVector &v) const {
    if (!admissible_direction(p, v))
        throw std::invalid_argument("direction not admissible at the base point");
    return integer_kernel(active_constraint_rows(p, &v));
}

std::vector<LatticeVector> ElementaryGeometry::collapsed_directions(const RationalPoint &p) const {
    require_inside(p);
    std::vector<LatticeVector> out;
    switch (kind_) {
        case GeometryKind::FullBoundary:
            break;
        case GeometryKind::OneNonBoundary:
            if (p.z == psi_value(psi_, p.x, p.y)) out.push_back(LatticeVector(0, 0, 1));
            break;
        case GeometryKind::TwoNonBoundary:
            if (p.y == psi1d_value(psi1_, p.x)) out.push_back(LatticeVector(0, 1, 0));
            if (p.z == psi1d_value(psi2_, p.x)) out.push_back(LatticeVector(0, 0, 1));
            break;
        case GeometryKind::ThreeNonBoundary:
            if (p.x == 0) out.push_back(LatticeVector(1, 0, 0));
            if (p.y == 0) out.push_back(LatticeVector(0, 1, 0));
            if (p.z == 0) out.push_back(LatticeVector(0, 0, 1));
            break;
    }
    return out;
}

std::string ElementaryGeometry::kind_name() const {
    switch (kind_) {
        case GeometryKind::FullBoundary: return "full_boundary";
        case GeometryKind::OneNonBoundary: return "one_non_boundary";
        case GeometryKind::TwoNonBoundary: return "two_non_boundary";
        case GeometryKind::ThreeNonBoundary: return "three_non_boundary";
    }
    return "";
}

std::string ElementaryGeometry::subkind_name() const {
    switch (subkind_) {
        case GeometrySubkind::None: return "none";
        case GeometrySubkind::Straight: return "straight";
        case GeometrySubkind::Ruled: return "ruled";
        case GeometrySubkind::General: return "general";
    }
    return "";
}

}  // namespace gwpt
