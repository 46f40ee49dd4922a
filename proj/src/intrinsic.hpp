#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "quantum_relation.hpp"

namespace qrel {

// Solve A X = RHS for square invertible A.
template <class S>
Mat<S> solve_linear(const Mat<S>& a, const Mat<S>& rhs) {
    std::size_t n = a.rows();
    if (a.cols() != n || rhs.rows() != n) throw ValidationError("solve_linear: shape mismatch");
    std::vector<std::vector<S>> aug(n, std::vector<S>(n + rhs.cols()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a.at(i, j);
        for (std::size_t j = 0; j < rhs.cols(); ++j) aug[i][n + j] = rhs.at(i, j);
    }
    rref(aug, n + rhs.cols());
    if (aug.size() < n) throw ValidationError("solve_linear: singular system");
    Mat<S> x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x.at(i, j) = aug[i][n + j];
    return x;
}

// Orthogonal projection onto the span of the given vectors, with respect to
// the standard sesquilinear inner product. Exact over Gaussian rationals.
template <class S>
Mat<S> orthogonal_projection(std::size_t dim, const std::vector<std::vector<S>>& vectors) {
    std::vector<std::vector<S>> rows = vectors;
    rref(rows, dim);
    std::size_t r = rows.size();
    if (r == 0) return Mat<S>(dim, dim);
    Mat<S> b(dim, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < dim; ++i) b.at(i, j) = rows[j][i];
    Mat<S> bs = b.adjoint();
    Mat<S> gram = bs * b;
    return b * solve_linear(gram, bs);
}

// The action of M (x) M^op on B(H), with elements realized concretely as
// n^2 x n^2 superoperator matrices acting on row-major vectorizations.
// The opposite twist lives purely in the action order A B C; no stored
// data is transposed. The realization is faithful, so canonical spans of
// superoperators decide equality of tensor elements.
template <class S>
class TensorOpAlgebra {
public:
    static TensorOpAlgebra of(const Algebra<S>& base) {
        std::vector<Mat<S>> gens;
        const auto basis = base.space().basis_matrices();
        for (const Mat<S>& a : basis)
            for (const Mat<S>& c : basis) gens.push_back(superoperator(a, c));
        std::size_t n2 = base.n() * base.n();
        Subspace<S> space = Subspace<S>::span(n2, n2, gens);
        if (space.dim() != base.dim() * base.dim())
            throw std::logic_error("tensor square has unexpected dimension");
        return TensorOpAlgebra(base, std::move(space));
    }

    const Algebra<S>& base() const { return base_; }
    const Subspace<S>& space() const { return space_; }
    std::size_t n() const { return base_.n(); }
    std::size_t super_dim() const { return base_.n() * base_.n(); }

    // Superoperator of A (x) C: B |-> A B C.
    static Mat<S> superoperator(const Mat<S>& a, const Mat<S>& c) {
        std::size_t n = a.rows();
        Mat<S> t(n * n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        t.at(i * n + l, j * n + k) = a.at(i, j) * c.at(k, l);
            }
        return t;
    }

    static Mat<S> apply(const Mat<S>& superop, const Mat<S>& b) {
        std::size_t n = b.rows();
        Mat<S> out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                S acc;
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        acc += superop.at(i * n + l, j * n + k) * b.at(j, k);
                out.at(i, l) = acc;
            }
        return out;
    }

    // Factored form of a superoperator as a sum of matrix pairs (A_i, C_i),
    // grouped by matrix units in the first leg.
    static std::vector<std::pair<Mat<S>, Mat<S>>> factor_pairs(const Mat<S>& superop, std::size_t n) {
        std::vector<std::pair<Mat<S>, Mat<S>>> out;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Mat<S> c(n, n);
                bool nonzero = false;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        c.at(k, l) = superop.at(i * n + l, j * n + k);
                        if (!c.at(k, l).is_zero()) nonzero = true;
                    }
                if (nonzero) out.emplace_back(Mat<S>::unit(n, i, j), c);
            }
        return out;
    }

private:
    TensorOpAlgebra(Algebra<S> base, Subspace<S> space) : base_(std::move(base)), space_(std::move(space)) {}

    Algebra<S> base_;
    Subspace<S> space_;
};

// A left ideal of M (x) M^op, stored as the canonical span of its
// superoperator matrices.
template <class S>
struct LeftIdeal {
    Subspace<S> space;
};

// Validates the left-ideal property inside the tensor algebra; returns a
// witness element outside the ideal on failure.
template <class S>
std::optional<Mat<S>> left_ideal_violation(const TensorOpAlgebra<S>& alg, const LeftIdeal<S>& ideal) {
    if (!alg.space().contains(ideal.space)) return ideal.space.basis_matrix(0);
    const auto gens = alg.space().basis_matrices();
    for (const Mat<S>& y : ideal.space.basis_matrices())
        for (const Mat<S>& g : gens) {
            Mat<S> p = g * y;
            if (!ideal.space.contains(p)) return p;
        }
    return std::nullopt;
}

// Annihilator ideal of a quantum relation: all tensor elements whose action
// kills every element of V.
template <class S>
LeftIdeal<S> ideal_of_relation(const TensorOpAlgebra<S>& alg, const Bimodule<S>& v) {
    if (alg.base() != v.ambient()) throw ValidationError("relation does not live over the tensor base");
    std::size_t n = alg.n();
    const auto gens = alg.space().basis_matrices();
    const auto vbasis = v.space().basis_matrices();
    // unknowns: coefficients over the tensor algebra basis
    std::vector<std::vector<S>> sys;
    for (const Mat<S>& b : vbasis) {
        // rows indexed by entries of Phi_X(b)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                std::vector<S> row(gens.size());
                for (std::size_t g = 0; g < gens.size(); ++g) {
                    S acc;
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k)
                            acc += gens[g].at(i * n + l, j * n + k) * b.at(j, k);
                    row[g] = acc;
                }
                sys.push_back(std::move(row));
            }
    }
    std::vector<Mat<S>> elements;
    for (const std::vector<S>& x : kernel_basis(std::move(sys), gens.size())) {
        Mat<S> t(alg.super_dim(), alg.super_dim());
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (x[g].is_zero()) continue;
            t = t + x[g] * gens[g];
        }
        elements.push_back(std::move(t));
    }
    return LeftIdeal<S>{Subspace<S>::span(alg.super_dim(), alg.super_dim(), elements)};
}

// Joint kernel of the ideal's action: the quantum relation it annihilates.
template <class S>
Bimodule<S> relation_of_ideal(const TensorOpAlgebra<S>& alg, const LeftIdeal<S>& ideal) {
    if (auto w = left_ideal_violation(alg, ideal))
        throw ValidationError("input is not a left ideal of the tensor algebra");
    std::size_t n = alg.n();
    std::vector<std::vector<S>> sys;
    for (const Mat<S>& y : ideal.space.basis_matrices())
        for (std::size_t r = 0; r < alg.super_dim(); ++r) {
            std::vector<S> row(n * n);
            for (std::size_t c = 0; c < n * n; ++c) {
                // column index (j,k) of the superoperator addresses entry B(j,k)
                std::size_t j = c / n, k = c % n;
                row[j * n + k] = y.at(r, c);
            }
            sys.push_back(std::move(row));
        }
    std::vector<Mat<S>> mats;
    for (std::vector<S>& x : kernel_basis(std::move(sys), n * n)) mats.emplace_back(n, n, std::move(x));
    return Bimodule<S>::from_space(alg.base(), Subspace<S>::span(n, n, mats));
}

// The projection generator of a left ideal: the support projection of
// T = sum Y* Y over an ideal basis, computed exactly as the orthogonal
// projection onto the column space of T. Every left ideal of a
// finite-dimensional *-algebra has this form.
template <class S>
Mat<S> projection_form(const TensorOpAlgebra<S>& alg, const LeftIdeal<S>& ideal) {
    if (auto w = left_ideal_violation(alg, ideal))
        throw ValidationError("input is not a left ideal of the tensor algebra");
    std::size_t d = alg.super_dim();
    Mat<S> t(d, d);
    for (const Mat<S>& y : ideal.space.basis_matrices()) t = t + y.adjoint() * y;
    std::vector<std::vector<S>> cols;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<S> col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = t.at(i, j);
        cols.push_back(std::move(col));
    }
    Mat<S> p = orthogonal_projection(d, cols);
    if (!ideal.space.contains(p)) throw std::logic_error("support projection escaped the ideal");
    // the ideal is regenerated by its projection
    std::vector<Mat<S>> regen;
    for (const Mat<S>& g : alg.space().basis_matrices()) regen.push_back(g * p);
    if (Subspace<S>::span(d, d, regen) != ideal.space)
        throw std::logic_error("projection does not regenerate the ideal");
    return p;
}

// P |-> the relation annihilated by (M (x) M^op)(1 - P); an order
// isomorphism from projections in the tensor square onto quantum relations.
template <class S>
Bimodule<S> relation_of_projection(const TensorOpAlgebra<S>& alg, const Mat<S>& p) {
    std::size_t d = alg.super_dim();
    if (p.rows() != d || p.cols() != d) throw ValidationError("projection has wrong shape");
    if (!alg.space().contains(p)) throw ValidationError("projection is not in the tensor algebra");
    if (p * p != p || p.adjoint() != p) throw ValidationError("input is not a projection");
    Mat<S> q = Mat<S>::identity(d) - p;
    std::vector<Mat<S>> gens;
    for (const Mat<S>& g : alg.space().basis_matrices()) gens.push_back(g * q);
    LeftIdeal<S> ideal{Subspace<S>::span(d, d, gens)};
    return relation_of_ideal(alg, ideal);
}

// Separation of a non-member from a quantum relation by a pair of
// projections in M (x) full blocks, after amplification.
template <class S>
struct SeparationWitness {
    std::size_t degree;   // amplification degree d <= n
    Mat<S> left, right;   // projections P and Q of size (n d) x (n d)
    Mat<S> functional;    // trace functional annihilating V but not A
    Mat<S> op;            // the separated operator
};

template <class S>
std::variant<std::monostate, SeparationWitness<S>> separate(const Bimodule<S>& v, const Mat<S>& a) {
    if constexpr (!ScalarTraits<S>::exact)
        throw ValidationError("separation requires exact arithmetic; nonzero tests are not robust in float mode");
    std::size_t n = v.ambient().n();
    if (a.rows() != n || a.cols() != n) throw ValidationError("operator must match the ambient dimension");
    if (v.space().contains(a)) return std::monostate{};

    // trace functional tr(. T) vanishing on V but not on A
    std::vector<std::vector<S>> sys;
    for (const Mat<S>& b : v.space().basis_matrices()) {
        std::vector<S> row(n * n);  // unknowns: entries of T
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) row[j * n + i] = b.at(i, j);  // tr(B T) = sum B_ij T_ji
        sys.push_back(std::move(row));
    }
    std::optional<Mat<S>> t;
    for (std::vector<S>& x : kernel_basis(std::move(sys), n * n)) {
        Mat<S> cand(n, n, std::move(x));
        if (!(a * cand).trace().is_zero()) {
            t = std::move(cand);
            break;
        }
    }
    if (!t) throw std::logic_error("no separating functional found for a non-member");

    // rank factorization T = sum of d outer products w_i v_i^*
    std::vector<std::vector<S>> rows(n, std::vector<S>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = t->at(i, j);
    rref(rows, n);
    std::size_t d = rows.size();  // rank of T, never exceeding n
    // T = C * R with R the reduced rows; columns of C from solving on pivots
    // simpler: T = sum over reduced rows r_i of (coeff col c_i) r_i where
    // c_i reproduces T from its row space
    std::vector<std::vector<S>> w_vecs(d, std::vector<S>(n)), v_vecs(d, std::vector<S>(n));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) v_vecs[i][j] = rows[i][j].conj();  // v_i^* = i-th reduced row
    for (std::size_t r = 0; r < n; ++r) {
        // express row r of T in the reduced rows; pivots are unit columns
        std::vector<S> residue(n);
        for (std::size_t j = 0; j < n; ++j) residue[j] = t->at(r, j);
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t p = 0;
            while (p < n && rows[i][p].is_zero()) ++p;
            S f = residue[p];
            w_vecs[i][r] = f;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) residue[j] -= f * rows[i][j];
        }
    }

    // stacked vectors in C^d (x) C^n and commutant orbits
    auto stack = [&](const std::vector<std::vector<S>>& blocks) {
        std::vector<S> out(d * n);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] = blocks[i][j];
        return out;
    };
    std::vector<S> vv = stack(v_vecs), ww = stack(w_vecs);

    const auto comm = v.ambient().commutant().basis_matrices();
    auto orbit = [&](const std::vector<S>& x) {
        // smallest (I_d (x) M')-invariant subspace containing x; one span
        // suffices since M' is a unital algebra, but iterate to the fixed
        // point anyway
        std::vector<std::vector<S>> vecs = {x};
        std::size_t dim_before = 0;
        while (true) {
            std::vector<std::vector<S>> next = vecs;
            for (const std::vector<S>& y : vecs)
                for (const Mat<S>& c : comm) {
                    std::vector<S> z(d * n);
                    for (std::size_t blk = 0; blk < d; ++blk)
                        for (std::size_t i = 0; i < n; ++i) {
                            S acc;
                            for (std::size_t j = 0; j < n; ++j) acc += c.at(i, j) * y[blk * n + j];
                            z[blk * n + i] = acc;
                        }
                    next.push_back(std::move(z));
                }
            rref(next, d * n);
            if (next.size() == dim_before) break;
            dim_before = next.size();
            vecs = std::move(next);
        }
        return vecs;
    };

    Mat<S> p = orthogonal_projection(d * n, orbit(vv));
    Mat<S> q = orthogonal_projection(d * n, orbit(ww));
    return SeparationWitness<S>{d, std::move(p), std::move(q), std::move(*t), a};
}

// I_d (x) B on the stacked space, matching the witness layout.
template <class S>
Mat<S> amplified_operator(const Mat<S>& b, std::size_t d) {
    return kron(Mat<S>::identity(d), b);
}

}  // namespace qrel
