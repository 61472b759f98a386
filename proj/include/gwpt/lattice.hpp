#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwpt/rational.hpp"

namespace gwpt {

// Point / tangent vector of Z^3.
struct LatticeVector {
    Integer x, y, z;

    LatticeVector() : x(0), y(0), z(0) {}
    LatticeVector(Integer xx, Integer yy, Integer zz)
        : x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {}
    LatticeVector(long xx, long yy, long zz) : x(xx), y(yy), z(zz) {}

    LatticeVector operator+(const LatticeVector &o) const { return {x + o.x, y + o.y, z + o.z}; }
    LatticeVector operator-(const LatticeVector &o) const { return {x - o.x, y - o.y, z - o.z}; }
    LatticeVector operator-() const { return {-x, -y, -z}; }
    LatticeVector operator*(const Integer &c) const { return {x * c, y * c, z * c}; }
    bool operator==(const LatticeVector &o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const LatticeVector &o) const { return !(*this == o); }
    bool operator<(const LatticeVector &o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return z < o.z;
    }
    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    Integer operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    std::string to_string() const {
        return "(" + x.get_str() + "," + y.get_str() + "," + z.get_str() + ")";
    }
};

// Dense row-major integer matrix, arbitrary precision.
class IntegerMatrix {
  public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Integer(0)) {}

    static IntegerMatrix identity(int n);
    static IntegerMatrix from_rows(const std::vector<std::vector<Integer>> &rows);
    static IntegerMatrix from_row_vectors(const std::vector<LatticeVector> &rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Integer &at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Integer &at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    IntegerMatrix operator*(const IntegerMatrix &o) const;
    bool operator==(const IntegerMatrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    IntegerMatrix transpose() const;
    std::vector<Integer> row(int i) const;
    LatticeVector row3(int i) const;
    std::vector<Integer> apply(const std::vector<Integer> &v) const;  // M v
    LatticeVector apply3(const LatticeVector &v) const;

    // Exact determinant (Bareiss fraction-free elimination); square only.
    Integer det() const;

  private:
    int rows_, cols_;
    std::vector<Integer> data_;
};

// U * M * V = D with U, V unimodular, D diagonal, nonnegative, d1 | d2 | ...
struct SmithDecomposition {
    IntegerMatrix U, D, V;
    std::vector<Integer> diagonal() const;
    int rank() const;
};

SmithDecomposition smith_normal_form(const IntegerMatrix &m);

// v = g * v0 with v0 primitive (gcd of entries 1) and g > 0. Rejects 0.
std::pair<LatticeVector, Integer> primitive_part(const LatticeVector &v);

// Z-basis of {x : M x = 0}, as rows of the result, in row Hermite normal
// form (deterministic, and each basis vector primitive since the kernel is
// saturated). A 0-row matrix means M is injective.
IntegerMatrix kernel_basis(const IntegerMatrix &m);

// kernel_basis specialized to 3-column matrices.
std::vector<LatticeVector> integer_kernel(const IntegerMatrix &m);

// Row Hermite normal form of the lattice spanned by the rows (zero rows
// dropped): pivots positive, entries above pivots reduced into [0, pivot).
IntegerMatrix hermite_row_basis(const IntegerMatrix &rows);

int lattice_rank(const IntegerMatrix &m);

// Integer coordinates of v in the row basis `basis` (rows independent), if any.
std::optional<std::vector<Integer>> coordinates_in_row_basis(const IntegerMatrix &basis,
                                                             const std::vector<Integer> &v);

// Is v in the Q-span of the given vectors?
bool in_rational_span(const std::vector<LatticeVector> &span, const LatticeVector &v);

// Saturation (L tensor Q) cap Z^n of the row lattice, as a Hermite row basis.
IntegerMatrix saturation_row_basis(const IntegerMatrix &rows);

}  // namespace gwpt
