#pragma once

#include <array>
#include <string>
#include <vector>

#include "gwpt/lattice.hpp"
#include "gwpt/rational.hpp"

namespace gwpt {

struct RationalPoint {
    Rational x, y, z;

    RationalPoint() : x(0), y(0), z(0) {}
    RationalPoint(Rational xx, Rational yy, Rational zz)
        : x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {}
    RationalPoint(long xx, long yy, long zz) : x(xx), y(yy), z(zz) {}
    RationalPoint(const LatticeVector &v)
        : x(Rational(v.x)), y(Rational(v.y)), z(Rational(v.z)) {}

    RationalPoint operator+(const RationalPoint &o) const { return {x + o.x, y + o.y, z + o.z}; }
    RationalPoint operator-(const RationalPoint &o) const { return {x - o.x, y - o.y, z - o.z}; }
    bool operator==(const RationalPoint &o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const RationalPoint &o) const { return !(*this == o); }
    bool operator<(const RationalPoint &o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return z < o.z;
    }
    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    bool is_integral() const {
        return x.get_den() == 1 && y.get_den() == 1 && z.get_den() == 1;
    }
    std::string to_string() const {
        return "(" + x.get_str() + "," + y.get_str() + "," + z.get_str() + ")";
    }
};

// Scale a nonzero rational displacement to its primitive integer direction.
LatticeVector primitive_direction(const RationalPoint &delta);

enum class GeometryKind { FullBoundary, OneNonBoundary, TwoNonBoundary, ThreeNonBoundary };
enum class GeometrySubkind { None, Straight, Ruled, General };

struct TranslationGroup {
    int rank = 0;
    std::vector<LatticeVector> generators;
};

// One of the four elementary tropicalizations Sigma in R^3:
//
//   FullBoundary      R^3
//   OneNonBoundary    { z >= psi(x,y) },            psi = max of integer linear functionals on R^2
//   TwoNonBoundary    { y >= psi1(x), z >= psi2(x) }, psi_i = max of integer linear functionals on R
//   ThreeNonBoundary  R^3_{>=0}
//
// All four supports are convex cones, so a ray from p in direction d stays in
// Sigma iff d is in Sigma. collapsed_rays lists the directions killed by the
// collapse map pi: R^3 -> Sigma, sign-normalized (only their span is consumed).
class ElementaryGeometry {
  public:
    ElementaryGeometry() = default;  // full boundary

    static ElementaryGeometry full_boundary();
    static ElementaryGeometry one_non_boundary(std::vector<std::array<Integer, 2>> psi);
    static ElementaryGeometry two_non_boundary(std::vector<Integer> psi1, std::vector<Integer> psi2);
    static ElementaryGeometry three_non_boundary();

    GeometryKind kind() const { return kind_; }
    GeometrySubkind subkind() const { return subkind_; }
    const std::vector<std::array<Integer, 2>> &psi_functionals() const { return psi_; }
    const std::vector<Integer> &psi1_functionals() const { return psi1_; }
    const std::vector<Integer> &psi2_functionals() const { return psi2_; }
    const std::vector<LatticeVector> &collapsed_rays() const { return collapsed_; }

    bool operator==(const ElementaryGeometry &o) const {
        return kind_ == o.kind_ && psi_ == o.psi_ && psi1_ == o.psi1_ && psi2_ == o.psi2_;
    }

    bool contains_point(const RationalPoint &p) const;
    // p + eps*v in Sigma for small eps > 0 (tangent cone membership at p).
    bool admissible_direction(const RationalPoint &p, const LatticeVector &v) const;

    TranslationGroup translation_group() const;

    // Basis (rows) of the lattice of the face whose relative interior holds p.
    std::vector<LatticeVector> cone_lattice(const RationalPoint &p) const;
    // Same, at a point displaced infinitesimally from p along admissible v.
    std::vector<LatticeVector> cone_lattice_along(const RationalPoint &p,
                                                  const LatticeVector &v) const;

    // Collapsed rays whose boundary constraint is active at p; their span is
    // exactly the kernel of "every linear functional factoring through pi_p".
    std::vector<LatticeVector> collapsed_directions(const RationalPoint &p) const;

    std::string kind_name() const;
    std::string subkind_name() const;

  private:
    // Rows (a,b,c) of the linear equations cutting the face of p (optionally
    // displaced along v); cone_lattice = integer kernel of the stack.
    IntegerMatrix active_constraint_rows(const RationalPoint &p, const LatticeVector *v) const;
    void require_inside(const RationalPoint &p) const;

    GeometryKind kind_ = GeometryKind::FullBoundary;
    GeometrySubkind subkind_ = GeometrySubkind::None;
    std::vector<std::array<Integer, 2>> psi_;
    std::vector<Integer> psi1_, psi2_;
    std::vector<LatticeVector> collapsed_;
};

}  // namespace gwpt
