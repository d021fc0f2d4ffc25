#pragma once

#include "legsheaf/scalar.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace legsheaf {

using vec = std::vector<scalar>;

// Dense matrix over Q(i).  Row-major; all operations are exact.
class exact_matrix {
  public:
    exact_matrix() = default;
    exact_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    exact_matrix(std::size_t rows, std::size_t cols, std::vector<scalar> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            fail(errc::shape_mismatch, "entry count does not match rows*cols");
    }

    static exact_matrix identity(std::size_t n) {
        exact_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar(1);
        return m;
    }

    static exact_matrix zero(std::size_t rows, std::size_t cols) { return exact_matrix(rows, cols); }

    // Rows of the matrix are the given vectors.
    static exact_matrix from_rows(const std::vector<vec>& rows, std::size_t cols) {
        exact_matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) fail(errc::shape_mismatch, "row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static exact_matrix from_columns(const std::vector<vec>& cols, std::size_t rows) {
        exact_matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) fail(errc::shape_mismatch, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    vec row(std::size_t i) const {
        vec r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    vec column(std::size_t j) const {
        vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    exact_matrix transposed() const {
        exact_matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend exact_matrix operator*(const exact_matrix& a, const exact_matrix& b) {
        if (a.cols_ != b.rows_) fail(errc::shape_mismatch, "matrix product shape mismatch");
        exact_matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend exact_matrix operator+(const exact_matrix& a, const exact_matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(errc::shape_mismatch, "matrix sum shape mismatch");
        exact_matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) c.entries_[i] = a.entries_[i] + b.entries_[i];
        return c;
    }

    friend exact_matrix operator-(const exact_matrix& a, const exact_matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(errc::shape_mismatch, "matrix diff shape mismatch");
        exact_matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) c.entries_[i] = a.entries_[i] - b.entries_[i];
        return c;
    }

    friend vec operator*(const exact_matrix& a, const vec& x) {
        if (a.cols_ != x.size()) fail(errc::shape_mismatch, "matrix*vector shape mismatch");
        vec y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!a(i, j).is_zero()) y[i] += a(i, j) * x[j];
        return y;
    }

    friend bool operator==(const exact_matrix& a, const exact_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const exact_matrix& a, const exact_matrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<scalar> entries_;
};

inline bool is_zero_vec(const vec& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

// Reduced row echelon form.  Gaussian elimination with the first nonzero
// pivot in column order; pivots scaled to 1.  Deterministic.
inline exact_matrix rref(exact_matrix m, std::vector<std::size_t>* pivot_cols = nullptr) {
    std::size_t r = 0;
    if (pivot_cols) pivot_cols->clear();
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        scalar inv = scalar(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return m;
}

inline std::size_t rank(const exact_matrix& m) {
    std::vector<std::size_t> pivots;
    rref(m, &pivots);
    return pivots.size();
}

// Basis of the null space {v : m v = 0}.  One vector per free column, the
// free variable set to 1 (canonical given the RREF).
inline std::vector<vec> kernel_basis(const exact_matrix& m) {
    std::vector<std::size_t> pivots;
    exact_matrix r = rref(m, &pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        vec v(m.cols());
        v[f] = scalar(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool is_injective(const exact_matrix& m) { return rank(m) == m.cols(); }

inline bool is_invertible(const exact_matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Canonical basis of a span: nonzero rows of the RREF of the stacked vectors.
// Subspace equality is then representation equality.
inline std::vector<vec> canonical_span_basis(const std::vector<vec>& vectors, std::size_t ambient_dim) {
    if (vectors.empty()) return {};
    exact_matrix r = rref(exact_matrix::from_rows(vectors, ambient_dim));
    std::vector<vec> basis;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        vec v = r.row(i);
        if (!is_zero_vec(v)) basis.push_back(std::move(v));
    }
    return basis;
}

// Quotient of an ambient space by a subspace, with a canonical projection.
// The subspace basis is kept in RREF; quotient coordinates are indexed by
// the free (non-pivot) columns.
struct quotient_space {
    std::size_t ambient_dim = 0;
    std::vector<vec> subspace_basis;          // RREF rows
    std::vector<std::size_t> pivot_cols;      // pivots of the subspace basis
    std::vector<std::size_t> free_cols;       // quotient coordinate positions
    exact_matrix projection;                  // quotient_dim x ambient_dim

    std::size_t quotient_dim() const { return free_cols.size(); }

    // Reduce a vector modulo the subspace (kills pivot coordinates).
    vec reduce(vec x) const {
        if (x.size() != ambient_dim) fail(errc::shape_mismatch, "reduce: wrong ambient dimension");
        for (std::size_t i = 0; i < subspace_basis.size(); ++i) {
            scalar f = x[pivot_cols[i]];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < ambient_dim; ++j) x[j] -= f * subspace_basis[i][j];
        }
        return x;
    }

    bool contains(const vec& x) const { return is_zero_vec(reduce(x)); }

    // Coordinates of the class of x in the quotient basis {e_f + S}.
    vec project(const vec& x) const {
        vec red = reduce(x);
        vec q(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) q[k] = red[free_cols[k]];
        return q;
    }

    // Section of the projection: quotient coordinates back to ambient
    // representatives (the free-column unit vectors).
    exact_matrix section() const {
        exact_matrix s(ambient_dim, free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) s(free_cols[k], k) = scalar(1);
        return s;
    }
};

inline quotient_space make_quotient(std::size_t ambient_dim, const std::vector<vec>& subspace_vectors) {
    quotient_space q;
    q.ambient_dim = ambient_dim;
    q.subspace_basis = canonical_span_basis(subspace_vectors, ambient_dim);
    std::vector<bool> is_pivot(ambient_dim, false);
    for (const vec& row : q.subspace_basis) {
        std::size_t c = 0;
        while (c < ambient_dim && row[c].is_zero()) ++c;
        q.pivot_cols.push_back(c);
        is_pivot[c] = true;
    }
    for (std::size_t c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c]) q.free_cols.push_back(c);
    q.projection = exact_matrix(q.free_cols.size(), ambient_dim);
    for (std::size_t k = 0; k < q.free_cols.size(); ++k) {
        q.projection(k, q.free_cols[k]) = scalar(1);
        for (std::size_t i = 0; i < q.subspace_basis.size(); ++i)
            q.projection(k, q.pivot_cols[i]) = -q.subspace_basis[i][q.free_cols[k]];
    }
    return q;
}

// Coordinates of the vectors of a subspace basis with respect to a
// canonical (RREF) basis of an enclosing span.  Columns are the expressed
// vectors; fails if containment does not hold.
inline exact_matrix inclusion_matrix(const std::vector<vec>& sub, const std::vector<vec>& sup_rref,
                                     std::size_t ambient_dim) {
    exact_matrix m(sup_rref.size(), sub.size());
    for (std::size_t j = 0; j < sub.size(); ++j) {
        if (sub[j].size() != ambient_dim) fail(errc::shape_mismatch, "inclusion: wrong ambient dimension");
        vec x = sub[j];
        for (std::size_t i = 0; i < sup_rref.size(); ++i) {
            std::size_t piv = 0;
            while (piv < ambient_dim && sup_rref[i][piv].is_zero()) ++piv;
            m(i, j) = x[piv];
            for (std::size_t c = 0; c < ambient_dim; ++c) x[c] -= m(i, j) * sup_rref[i][c];
        }
        if (!is_zero_vec(x)) fail(errc::not_a_flag, "vector lies outside the enclosing span");
    }
    return m;
}

// Quotient of the codomain by the column span of m.
inline quotient_space cokernel(const exact_matrix& m) {
    std::vector<vec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
    return make_quotient(m.rows(), cols);
}

// The unique map on quotients with proj_dst . f = induced . proj_src.
// Requires f to carry the source subspace into the destination subspace.
inline exact_matrix induced_quotient_map(const exact_matrix& f, const quotient_space& src,
                                         const quotient_space& dst) {
    if (f.cols() != src.ambient_dim || f.rows() != dst.ambient_dim)
        fail(errc::shape_mismatch, "induced map: ambient dimensions disagree");
    for (const vec& b : src.subspace_basis)
        if (!dst.contains(f * b))
            fail(errc::subspace_not_preserved, "map does not send source subspace into destination subspace");
    return dst.projection * f * src.section();
}

// One solution of a x = b if the system is consistent.
inline std::optional<vec> solve_linear(const exact_matrix& a, const vec& b) {
    if (b.size() != a.rows()) fail(errc::shape_mismatch, "solve: right-hand side has wrong length");
    exact_matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> pivots;
    exact_matrix r = rref(aug, &pivots);
    vec x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == a.cols()) return std::nullopt; // pivot in the constant column
        x[pivots[i]] = r(i, a.cols());
    }
    return x;
}

inline exact_matrix inverse(const exact_matrix& m) {
    if (m.rows() != m.cols()) fail(errc::shape_mismatch, "inverse of non-square matrix");
    std::size_t n = m.rows();
    exact_matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = scalar(1);
    }
    std::vector<std::size_t> pivots;
    exact_matrix r = rref(aug, &pivots);
    for (std::size_t i = 0; i < n; ++i)
        if (!(pivots.size() > i && pivots[i] == i))
            fail(errc::invalid_argument, "matrix is singular");
    exact_matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

inline scalar determinant(exact_matrix m) {
    if (m.rows() != m.cols()) fail(errc::shape_mismatch, "determinant of non-square matrix");
    std::size_t n = m.rows();
    scalar det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return scalar(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        scalar inv = scalar(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            scalar f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// Coefficients of det(x I - m), monic, index k = coefficient of x^k.
// Faddeev-LeVerrier; exact over Q(i).
inline std::vector<scalar> characteristic_polynomial(const exact_matrix& m) {
    if (m.rows() != m.cols()) fail(errc::shape_mismatch, "char poly of non-square matrix");
    std::size_t n = m.rows();
    std::vector<scalar> coeff(n + 1);
    coeff[n] = scalar(1);
    exact_matrix acc = exact_matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        acc = m * acc;
        scalar tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += acc(i, i);
        scalar c = tr / scalar(rational(static_cast<int>(k)));
        coeff[n - k] = -c;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) -= c;
    }
    return coeff;
}

} // namespace legsheaf
