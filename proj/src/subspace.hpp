#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace qrel {

// Reduced row echelon form, in place. Rows are vectors of length `cols`;
// pivots are normalized to 1 with zeros above and below, rows ordered by
// pivot column, zero rows dropped. Two spans are equal iff their reduced
// bases are identical, so subspace equality is plain comparison.
template <class S>
void rref(std::vector<std::vector<S>>& rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][col].is_zero()) continue;
            if (sel == rows.size() || pivot_better(rows[r][col], rows[sel][col])) sel = r;
        }
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        S inv = S(1) / rows[rank][col];
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] = inv * rows[rank][j];
        rows[rank][col] = S(1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            S f = rows[r][col];
            for (std::size_t j = col; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
            rows[r][col] = S(0);
        }
        ++rank;
    }
    rows.resize(rank);
}

// Basis of the null space {x : M x = 0} of an m x k coefficient matrix,
// via RREF and back-substitution of free columns.
template <class S>
std::vector<std::vector<S>> kernel_basis(std::vector<std::vector<S>> m, std::size_t k) {
    rref(m, k);
    std::vector<std::size_t> pivot_col(m.size());
    std::vector<bool> is_pivot(k, false);
    for (std::size_t r = 0; r < m.size(); ++r) {
        std::size_t c = 0;
        while (c < k && m[r][c].is_zero()) ++c;
        pivot_col[r] = c;
        if (c < k) is_pivot[c] = true;
    }
    std::vector<std::vector<S>> out;
    for (std::size_t free = 0; free < k; ++free) {
        if (is_pivot[free]) continue;
        std::vector<S> x(k);
        x[free] = S(1);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (pivot_col[r] < k) x[pivot_col[r]] = -m[r][free];
        }
        out.push_back(std::move(x));
    }
    return out;
}

// A linear subspace of the space of rows x cols matrices, stored as the
// canonical reduced-echelon basis of its vectorization. This is the carrier
// for operator subspaces, bimodules, algebras and annihilator ideals alike.
template <class S>
class Subspace {
public:
    Subspace() : rows_(0), cols_(0) {}

    static Subspace zero(std::size_t rows, std::size_t cols) { return Subspace(rows, cols, {}); }

    static Subspace full(std::size_t n) {
        std::vector<Mat<S>> gens;
        gens.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gens.push_back(Mat<S>::unit(n, i, j));
        return span(n, n, gens);
    }

    // Canonical span of a family of equal-shape matrices. Idempotent.
    static Subspace span(std::size_t rows, std::size_t cols, const std::vector<Mat<S>>& gens) {
        std::vector<std::vector<S>> v;
        v.reserve(gens.size());
        for (const Mat<S>& g : gens) {
            if (g.rows() != rows || g.cols() != cols) throw ValidationError("span: matrix shape mismatch");
            v.push_back(g.entries());
        }
        rref(v, rows * cols);
        return Subspace(rows, cols, std::move(v));
    }

    std::size_t mat_rows() const { return rows_; }
    std::size_t mat_cols() const { return cols_; }
    std::size_t ambient_dim() const { return rows_ * cols_; }
    std::size_t dim() const { return basis_.size(); }

    Mat<S> basis_matrix(std::size_t i) const { return Mat<S>(rows_, cols_, basis_[i]); }
    std::vector<Mat<S>> basis_matrices() const {
        std::vector<Mat<S>> out;
        out.reserve(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(basis_matrix(i));
        return out;
    }
    const std::vector<std::vector<S>>& basis_rows() const { return basis_; }

    // Residual of A after reduction against the canonical basis; A lies in
    // the subspace iff the residual vanishes.
    std::vector<S> reduce(const Mat<S>& a) const {
        check_member_shape(a);
        std::vector<S> v = a.entries();
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            std::size_t p = pivot_of(r);
            if (v[p].is_zero()) continue;
            S f = v[p];
            for (std::size_t j = p; j < v.size(); ++j) v[j] -= f * basis_[r][j];
            v[p] = S(0);
        }
        return v;
    }

    bool contains(const Mat<S>& a) const {
        for (const S& x : reduce(a))
            if (!x.is_zero()) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        check_shape(other);
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_matrix(i))) return false;
        return true;
    }

    // Coordinates of A in the canonical basis, if A belongs to the subspace.
    std::optional<std::vector<S>> coordinates(const Mat<S>& a) const {
        check_member_shape(a);
        std::vector<S> v = a.entries();
        std::vector<S> coeff(basis_.size());
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            std::size_t p = pivot_of(r);
            if (v[p].is_zero()) continue;
            S f = v[p];
            coeff[r] = f;
            for (std::size_t j = p; j < v.size(); ++j) v[j] -= f * basis_[r][j];
            v[p] = S(0);
        }
        for (const S& x : v)
            if (!x.is_zero()) return std::nullopt;
        return coeff;
    }

    friend Subspace sum(const Subspace& a, const Subspace& b) {
        a.check_shape(b);
        std::vector<std::vector<S>> rows = a.basis_;
        rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
        rref(rows, a.ambient_dim());
        return Subspace(a.rows_, a.cols_, std::move(rows));
    }

    // Intersection via the kernel of the stacked coordinate system
    // [basis(a)^T | -basis(b)^T].
    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        a.check_shape(b);
        std::size_t n = a.ambient_dim(), da = a.dim(), db = b.dim();
        std::vector<std::vector<S>> sys(n, std::vector<S>(da + db));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t r = 0; r < da; ++r) sys[i][r] = a.basis_[r][i];
            for (std::size_t r = 0; r < db; ++r) sys[i][da + r] = -b.basis_[r][i];
        }
        std::vector<std::vector<S>> rows;
        for (const std::vector<S>& x : kernel_basis(std::move(sys), da + db)) {
            std::vector<S> v(n);
            for (std::size_t r = 0; r < da; ++r) {
                if (x[r].is_zero()) continue;
                for (std::size_t i = 0; i < n; ++i) v[i] += x[r] * a.basis_[r][i];
            }
            rows.push_back(std::move(v));
        }
        rref(rows, n);
        return Subspace(a.rows_, a.cols_, std::move(rows));
    }

    // Span of {A B : A in basis(a), B in basis(b)}; by bilinearity this is
    // the span of all products.
    friend Subspace multiply_spans(const Subspace& a, const Subspace& b) {
        if (a.cols_ != b.rows_) throw ValidationError("multiply_spans: dimension mismatch");
        std::vector<std::vector<S>> rows;
        rows.reserve(a.dim() * b.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) {
            Mat<S> ai = a.basis_matrix(i);
            for (std::size_t j = 0; j < b.dim(); ++j) {
                Mat<S> p = ai * b.basis_matrix(j);
                if (!p.is_zero()) rows.push_back(p.entries());
            }
        }
        rref(rows, a.rows_ * b.cols_);
        return Subspace(a.rows_, b.cols_, std::move(rows));
    }

    friend Subspace adjoint_space(const Subspace& a) {
        std::vector<std::vector<S>> rows;
        rows.reserve(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) rows.push_back(a.basis_matrix(i).adjoint().entries());
        rref(rows, a.ambient_dim());
        return Subspace(a.cols_, a.rows_, std::move(rows));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.dim() != b.dim()) return false;
        for (std::size_t r = 0; r < a.basis_.size(); ++r)
            for (std::size_t i = 0; i < a.basis_[r].size(); ++i)
                if (a.basis_[r][i] != b.basis_[r][i]) return false;
        return true;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Subspace(std::size_t rows, std::size_t cols, std::vector<std::vector<S>> basis)
        : rows_(rows), cols_(cols), basis_(std::move(basis)) {}

    std::size_t pivot_of(std::size_t r) const {
        std::size_t c = 0;
        while (c < basis_[r].size() && basis_[r][c].is_zero()) ++c;
        return c;
    }

    void check_shape(const Subspace& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("subspace ambient dimension mismatch");
    }
    void check_member_shape(const Mat<S>& a) const {
        if (a.rows() != rows_ || a.cols() != cols_) throw ValidationError("matrix shape does not match subspace ambient");
    }

    std::size_t rows_, cols_;
    std::vector<std::vector<S>> basis_;
};

// All X with L_i X = X R_i for the given constraint pairs: the exact kernel
// of the homogeneous system on the n^2 entries of X. Backs commutant and
// annihilator computations.
template <class S>
Subspace<S> solve_commutation(std::size_t n, const std::vector<std::pair<Mat<S>, Mat<S>>>& constraints) {
    for (const auto& [l, r] : constraints)
        if (l.rows() != n || l.cols() != n || r.rows() != n || r.cols() != n)
            throw ValidationError("solve_commutation: constraint matrices must be n x n");
    std::vector<std::vector<S>> sys;
    sys.reserve(constraints.size() * n * n);
    for (const auto& [l, r] : constraints) {
        // row for entry (i,j) of L X - X R; unknowns are entries of X
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<S> row(n * n);
                for (std::size_t k = 0; k < n; ++k) {
                    row[k * n + j] += l.at(i, k);
                    row[i * n + k] -= r.at(k, j);
                }
                sys.push_back(std::move(row));
            }
    }
    std::vector<std::vector<S>> rows = kernel_basis(std::move(sys), n * n);
    std::vector<Mat<S>> mats;
    mats.reserve(rows.size());
    for (std::vector<S>& v : rows) mats.emplace_back(n, n, std::move(v));
    return Subspace<S>::span(n, n, mats);
}

}  // namespace qrel
