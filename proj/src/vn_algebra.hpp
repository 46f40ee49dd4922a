#pragma once

#include <utility>
#include <vector>

#include "subspace.hpp"

namespace qrel {

// Finite-dimensional von Neumann algebra: a unital *-closed subalgebra of
// the n x n matrices, with its commutant computed once at construction.
// Invalid raw input is an error, never silently repaired.
template <class S>
class Algebra {
public:
    // Smallest unital *-closed product-closed subspace containing the
    // generators. The closure loop terminates because the dimension grows
    // strictly until the fixed point (at most n^2 rounds).
    static Algebra generate(std::size_t n, const std::vector<Mat<S>>& generators) {
        for (const Mat<S>& g : generators)
            if (g.rows() != n || g.cols() != n) throw ValidationError("generators must be n x n");
        std::vector<Mat<S>> seed;
        seed.push_back(Mat<S>::identity(n));
        for (const Mat<S>& g : generators) {
            seed.push_back(g);
            seed.push_back(g.adjoint());
        }
        Subspace<S> v = Subspace<S>::span(n, n, seed);
        while (true) {
            Subspace<S> next = sum(v, multiply_spans(v, v));
            if (next == v) break;
            v = std::move(next);
        }
        return Algebra(n, std::move(v));
    }

    static Algebra from_space(const Subspace<S>& space) {
        std::size_t n = space.mat_rows();
        if (space.mat_cols() != n) throw ValidationError("algebra must consist of square matrices");
        if (!space.contains(Mat<S>::identity(n))) throw ValidationError("algebra must contain the identity");
        if (adjoint_space(space) != space) throw ValidationError("algebra must be closed under adjoints");
        if (!space.contains(multiply_spans(space, space)))
            throw ValidationError("algebra must be closed under products");
        return Algebra(n, space);
    }

    static Algebra full(std::size_t n) { return Algebra(n, Subspace<S>::full(n)); }

    static Algebra scalars(std::size_t n) {
        return Algebra(n, Subspace<S>::span(n, n, {Mat<S>::identity(n)}));
    }

    static Algebra diagonal_masa(std::size_t n) {
        std::vector<Mat<S>> units;
        for (std::size_t i = 0; i < n; ++i) units.push_back(Mat<S>::unit(n, i, i));
        return Algebra(n, Subspace<S>::span(n, n, units));
    }

    std::size_t n() const { return n_; }
    std::size_t dim() const { return space_.dim(); }
    const Subspace<S>& space() const { return space_; }
    const Subspace<S>& commutant() const { return commutant_; }

    // The commutant as an algebra in its own right (its own commutant is
    // recomputed, so double-commutant checks are genuine).
    Algebra commutant_algebra() const { return Algebra(n_, commutant_); }

    bool is_masa_diagonal() const { return space_ == diagonal_masa(n_).space_; }

    // I_d (x) M inside M_{d n}, block-diagonal.
    friend Algebra amplify(const Algebra& m, std::size_t d) {
        if (d < 1) throw ValidationError("amplification degree must be at least 1");
        std::vector<Mat<S>> gens;
        Mat<S> id = Mat<S>::identity(d);
        for (const Mat<S>& a : m.space_.basis_matrices()) gens.push_back(kron(id, a));
        return Algebra(m.n_ * d, Subspace<S>::span(m.n_ * d, m.n_ * d, gens));
    }

    friend Algebra direct_sum(const Algebra& m, const Algebra& n) {
        std::size_t total = m.n_ + n.n_;
        std::vector<Mat<S>> gens;
        for (const Mat<S>& a : m.space_.basis_matrices()) gens.push_back(embed(a, 0, total));
        for (const Mat<S>& b : n.space_.basis_matrices()) gens.push_back(embed(b, m.n_, total));
        return Algebra(total, Subspace<S>::span(total, total, gens));
    }

    friend bool operator==(const Algebra& a, const Algebra& b) { return a.space_ == b.space_; }
    friend bool operator!=(const Algebra& a, const Algebra& b) { return !(a == b); }

private:
    Algebra(std::size_t n, Subspace<S> space)
        : n_(n), space_(std::move(space)), commutant_(compute_commutant(n_, space_)) {}

    static Subspace<S> compute_commutant(std::size_t n, const Subspace<S>& space) {
        std::vector<std::pair<Mat<S>, Mat<S>>> constraints;
        for (const Mat<S>& a : space.basis_matrices()) constraints.emplace_back(a, a);
        return solve_commutation(n, constraints);
    }

    static Mat<S> embed(const Mat<S>& a, std::size_t offset, std::size_t total) {
        Mat<S> r(total, total);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) r.at(offset + i, offset + j) = a.at(i, j);
        return r;
    }

    std::size_t n_;
    Subspace<S> space_;
    Subspace<S> commutant_;
};

using AlgebraQ = Algebra<GaussianRational>;

}  // namespace qrel
