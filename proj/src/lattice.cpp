#include "gwpt/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwpt {

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>> &rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntegerMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntegerMatrix IntegerMatrix::from_row_vectors(const std::vector<LatticeVector> &rows) {
    IntegerMatrix m(static_cast<int>(rows.size()), 3);
    for (size_t i = 0; i < rows.size(); ++i) {
        m.at(static_cast<int>(i), 0) = rows[i].x;
        m.at(static_cast<int>(i), 1) = rows[i].y;
        m.at(static_cast<int>(i), 2) = rows[i].z;
    }
    return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix &o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntegerMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Integer &a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Integer> IntegerMatrix::row(int i) const {
    std::vector<Integer> r(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = at(i, j);
    return r;
}

LatticeVector IntegerMatrix::row3(int i) const {
    if (cols_ != 3) throw std::invalid_argument("row3 on non-3-column matrix");
    return {at(i, 0), at(i, 1), at(i, 2)};
}

std::vector<Integer> IntegerMatrix::apply(const std::vector<Integer> &v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply shape mismatch");
    std::vector<Integer> r(static_cast<size_t>(rows_), Integer(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

LatticeVector IntegerMatrix::apply3(const LatticeVector &v) const {
    if (rows_ != 3 || cols_ != 3) throw std::invalid_argument("apply3 needs 3x3");
    auto r = apply({v.x, v.y, v.z});
    return {r[0], r[1], r[2]};
}

Integer IntegerMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntegerMatrix a = *this;
    Integer sign(1), prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Integer t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::vector<Integer> SmithDecomposition::diagonal() const {
    int n = std::min(D.rows(), D.cols());
    std::vector<Integer> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = D.at(i, i);
    return d;
}

int SmithDecomposition::rank() const {
    int r = 0;
    for (const auto &d : diagonal())
        if (d != 0) ++r;
    return r;
}

namespace {

struct SnfWork {
    IntegerMatrix d, u, v;  // invariant: u * input * v == d

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (int j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    void add_row(int dst, int src, const Integer &f) {  // row dst += f * row src
        for (int j = 0; j < d.cols(); ++j) d.at(dst, j) += f * d.at(src, j);
        for (int j = 0; j < u.cols(); ++j) u.at(dst, j) += f * u.at(src, j);
    }
    void add_col(int dst, int src, const Integer &f) {
        for (int i = 0; i < d.rows(); ++i) d.at(i, dst) += f * d.at(i, src);
        for (int i = 0; i < v.rows(); ++i) v.at(i, dst) += f * v.at(i, src);
    }
    void negate_row(int r) {
        for (int j = 0; j < d.cols(); ++j) d.at(r, j) = -d.at(r, j);
        for (int j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
    }

    bool pivot_is_lone(int t) const {
        for (int i = t + 1; i < d.rows(); ++i)
            if (d.at(i, t) != 0) return false;
        for (int j = t + 1; j < d.cols(); ++j)
            if (d.at(t, j) != 0) return false;
        return true;
    }

    // Smallest nonzero |entry| in the trailing submatrix; false if all zero.
    bool locate_pivot(int t, int &pi, int &pj) const {
        bool found = false;
        Integer best;
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j) {
                if (d.at(i, j) == 0) continue;
                Integer a = abs(d.at(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix &m) {
    SnfWork w{m, IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols())};
    int nmin = std::min(m.rows(), m.cols());
    for (int t = 0; t < nmin; ++t) {
        int pi, pj;
        if (!w.locate_pivot(t, pi, pj)) break;  // trailing block already zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        while (!w.pivot_is_lone(t)) {
            for (int i = t + 1; i < w.d.rows(); ++i) {
                if (w.d.at(i, t) == 0) continue;
                Integer f = w.d.at(i, t) / w.d.at(t, t);  // C truncation keeps |remainder| < |pivot|
                w.add_row(i, t, -f);
            }
            for (int j = t + 1; j < w.d.cols(); ++j) {
                if (w.d.at(t, j) == 0) continue;
                Integer f = w.d.at(t, j) / w.d.at(t, t);
                w.add_col(j, t, -f);
            }
            int qi, qj;
            if (!w.pivot_is_lone(t)) {
                // remainders survived; pull the smallest one into the pivot slot
                if (w.locate_pivot(t, qi, qj)) {
                    w.swap_rows(t, qi);
                    w.swap_cols(t, qj);
                }
            }
        }
        // divisibility: pivot must divide everything below-right
        bool redo = true;
        while (redo) {
            redo = false;
            for (int i = t + 1; i < w.d.rows() && !redo; ++i)
                for (int j = t + 1; j < w.d.cols() && !redo; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.add_row(t, i, Integer(1));
                        // clearing recurses with a strictly smaller pivot eventually
                        while (!w.pivot_is_lone(t)) {
                            for (int r = t + 1; r < w.d.rows(); ++r) {
                                if (w.d.at(r, t) == 0) continue;
                                Integer f = w.d.at(r, t) / w.d.at(t, t);
                                w.add_row(r, t, -f);
                            }
                            for (int c = t + 1; c < w.d.cols(); ++c) {
                                if (w.d.at(t, c) == 0) continue;
                                Integer f = w.d.at(t, c) / w.d.at(t, t);
                                w.add_col(c, t, -f);
                            }
                            int qi, qj;
                            if (!w.pivot_is_lone(t) && w.locate_pivot(t, qi, qj)) {
                                w.swap_rows(t, qi);
                                w.swap_cols(t, qj);
                            }
                        }
                        redo = true;
                    }
        }
        if (w.d.at(t, t) < 0) w.negate_row(t);
    }
    return SmithDecomposition{w.u, w.d, w.v};
}

std::pair<LatticeVector, Integer> primitive_part(const LatticeVector &v) {
    if (v.is_zero()) throw std::invalid_argument("primitive_part of zero vector");
    Integer g = gcd(gcd(abs(v.x), abs(v.y)), abs(v.z));
    return {LatticeVector{v.x / g, v.y / g, v.z / g}, g};
}

IntegerMatrix hermite_row_basis(const IntegerMatrix &rows) {
    // Row-style HNF by integer Gaussian elimination with gcd pivots.
    int m = rows.rows(), n = rows.cols();
    std::vector<std::vector<Integer>> a;
    a.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) a.push_back(rows.row(i));
    int pivot_row = 0;
    for (int col = 0; col < n && pivot_row < m; ++col) {
        int nz = -1;
        for (int i = pivot_row; i < m; ++i)
            if (a[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) { nz = i; break; }
        if (nz < 0) continue;
        std::swap(a[static_cast<size_t>(pivot_row)], a[static_cast<size_t>(nz)]);
        // reduce all lower rows against the pivot row until column is clear
        bool again = true;
        while (again) {
            again = false;
            for (int i = pivot_row + 1; i < m; ++i) {
                Integer &p = a[static_cast<size_t>(pivot_row)][static_cast<size_t>(col)];
                Integer &c = a[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (c == 0) continue;
                Integer q = c / p;
                for (int j = 0; j < n; ++j)
                    a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        q * a[static_cast<size_t>(pivot_row)][static_cast<size_t>(j)];
                if (a[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                    std::swap(a[static_cast<size_t>(pivot_row)], a[static_cast<size_t>(i)]);
                    again = true;
                }
            }
        }
        if (a[static_cast<size_t>(pivot_row)][static_cast<size_t>(col)] < 0)
            for (int j = 0; j < n; ++j)
                a[static_cast<size_t>(pivot_row)][static_cast<size_t>(j)] =
                    -a[static_cast<size_t>(pivot_row)][static_cast<size_t>(j)];
        // reduce rows above into [0, pivot)
        for (int i = 0; i < pivot_row; ++i) {
            Integer p = a[static_cast<size_t>(pivot_row)][static_cast<size_t>(col)];
            Integer c = a[static_cast<size_t>(i)][static_cast<size_t>(col)];
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
            if (q != 0)
                for (int j = 0; j < n; ++j)
                    a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        q * a[static_cast<size_t>(pivot_row)][static_cast<size_t>(j)];
        }
        ++pivot_row;
    }
    a.resize(static_cast<size_t>(pivot_row));
    return IntegerMatrix::from_rows(a);
}

IntegerMatrix kernel_basis(const IntegerMatrix &m) {
    // Columns of V beyond the SNF rank span the kernel; they form a basis of
    // the (saturated) integer kernel because V is unimodular.
    SmithDecomposition snf = smith_normal_form(m);
    int r = snf.rank();
    int n = m.cols();
    std::vector<std::vector<Integer>> gen;
    for (int j = r; j < n; ++j) {
        std::vector<Integer> col(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = snf.V.at(i, j);
        gen.push_back(std::move(col));
    }
    return hermite_row_basis(IntegerMatrix::from_rows(gen));
}

std::vector<LatticeVector> integer_kernel(const IntegerMatrix &m) {
    if (m.cols() != 3) throw std::invalid_argument("integer_kernel expects 3 columns");
    IntegerMatrix b = kernel_basis(m);
    std::vector<LatticeVector> out;
    for (int i = 0; i < b.rows(); ++i) out.push_back(b.row3(i));
    return out;
}

int lattice_rank(const IntegerMatrix &m) { return smith_normal_form(m).rank(); }

std::optional<std::vector<Integer>> coordinates_in_row_basis(const IntegerMatrix &basis,
                                                             const std::vector<Integer> &v) {
    // Solve x * basis = v. With U*B*V = D: y_i = (vV)_i / d_i, x = y U.
    if (static_cast<int>(v.size()) != basis.cols())
        throw std::invalid_argument("coordinate solve shape mismatch");
    SmithDecomposition snf = smith_normal_form(basis);
    int k = basis.rows(), n = basis.cols();
    std::vector<Integer> vV(static_cast<size_t>(n), Integer(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) vV[static_cast<size_t>(j)] += v[static_cast<size_t>(i)] * snf.V.at(i, j);
    std::vector<Integer> y(static_cast<size_t>(k), Integer(0));
    for (int i = 0; i < n; ++i) {
        Integer d = (i < k && i < n) ? snf.D.at(i, i) : Integer(0);
        if (d == 0) {
            if (vV[static_cast<size_t>(i)] != 0) return std::nullopt;
        } else {
            if (vV[static_cast<size_t>(i)] % d != 0) return std::nullopt;
            y[static_cast<size_t>(i)] = vV[static_cast<size_t>(i)] / d;
        }
    }
    std::vector<Integer> x(static_cast<size_t>(k), Integer(0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) x[static_cast<size_t>(j)] += y[static_cast<size_t>(i)] * snf.U.at(i, j);
    return x;
}

bool in_rational_span(const std::vector<LatticeVector> &span, const LatticeVector &v) {
    if (v.is_zero()) return true;
    IntegerMatrix a = IntegerMatrix::from_row_vectors(span);
    std::vector<LatticeVector> ext = span;
    ext.push_back(v);
    return lattice_rank(a) == lattice_rank(IntegerMatrix::from_row_vectors(ext));
}

IntegerMatrix saturation_row_basis(const IntegerMatrix &rows) {
    // double annihilator: saturation = ker(ker(rows))
    IntegerMatrix ann = kernel_basis(rows);
    if (ann.rows() == 0) return hermite_row_basis(IntegerMatrix::identity(rows.cols()));
    return kernel_basis(ann);
}

}  // namespace gwpt
