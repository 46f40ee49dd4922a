#pragma once

#include <utility>
#include <vector>

#include "relations.hpp"
#include "vn_algebra.hpp"

namespace qrel {

// A quantum relation on M: a subspace V of the ambient matrix space with
// M' V M' contained in V. In finite dimensions every subspace is weak*
// closed, so plain linear subspaces carry the whole theory.
template <class S>
class Bimodule {
public:
    // Span of M' g M' over the generators; the smallest bimodule
    // containing them. Idempotent.
    static Bimodule generate(const Algebra<S>& ambient, const std::vector<Mat<S>>& generators) {
        std::size_t n = ambient.n();
        for (const Mat<S>& g : generators)
            if (g.rows() != n || g.cols() != n) throw ValidationError("generators must match the ambient dimension");
        Subspace<S> gspan = Subspace<S>::span(n, n, generators);
        Subspace<S> v = multiply_spans(ambient.commutant(), multiply_spans(gspan, ambient.commutant()));
        return Bimodule(ambient, std::move(v));
    }

    static Bimodule from_space(const Algebra<S>& ambient, const Subspace<S>& space) {
        if (space.mat_rows() != ambient.n() || space.mat_cols() != ambient.n())
            throw ValidationError("relation space must match the ambient dimension");
        Subspace<S> closed = multiply_spans(ambient.commutant(), multiply_spans(space, ambient.commutant()));
        if (!space.contains(closed))
            throw ValidationError("subspace is not a bimodule over the commutant");
        return Bimodule(ambient, space);
    }

    static Bimodule diagonal(const Algebra<S>& ambient) { return Bimodule(ambient, ambient.commutant()); }

    static Bimodule zero(const Algebra<S>& ambient) {
        return Bimodule(ambient, Subspace<S>::zero(ambient.n(), ambient.n()));
    }

    const Algebra<S>& ambient() const { return ambient_; }
    const Subspace<S>& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }

    bool is_reflexive() const { return space_.contains(ambient_.commutant()); }
    bool is_symmetric() const { return adjoint_space(space_) == space_; }
    bool is_antisymmetric() const {
        return ambient_.commutant().contains(intersect(space_, adjoint_space(space_)));
    }
    bool is_transitive() const { return space_.contains(multiply_spans(space_, space_)); }

    // Most specific class first; a relation that is simultaneously an
    // equivalence and a partial order reports equivalence.
    RelationClass classify() const {
        bool refl = is_reflexive(), sym = is_symmetric(), anti = is_antisymmetric(), trans = is_transitive();
        if (refl && sym && trans) return RelationClass::Equivalence;
        if (refl && anti && trans) return RelationClass::PartialOrder;
        if (refl && trans) return RelationClass::Preorder;
        if (refl && sym) return RelationClass::Graph;
        return RelationClass::Plain;
    }

    friend Bimodule transpose(const Bimodule& v) { return Bimodule(v.ambient_, adjoint_space(v.space_)); }

    friend Bimodule product(const Bimodule& v, const Bimodule& w) {
        check_ambient(v, w);
        return Bimodule(v.ambient_, multiply_spans(v.space_, w.space_));
    }

    friend Bimodule intersect(const Bimodule& v, const Bimodule& w) {
        check_ambient(v, w);
        return Bimodule(v.ambient_, intersect(v.space_, w.space_));
    }

    friend Bimodule join(const Bimodule& v, const Bimodule& w) {
        check_ambient(v, w);
        return Bimodule(v.ambient_, sum(v.space_, w.space_));
    }

    friend bool operator==(const Bimodule& a, const Bimodule& b) {
        return a.ambient_ == b.ambient_ && a.space_ == b.space_;
    }
    friend bool operator!=(const Bimodule& a, const Bimodule& b) { return !(a == b); }

private:
    Bimodule(Algebra<S> ambient, Subspace<S> space) : ambient_(std::move(ambient)), space_(std::move(space)) {}

    static void check_ambient(const Bimodule& a, const Bimodule& b) {
        if (a.ambient_ != b.ambient_) throw ValidationError("relations live over different algebras");
    }

    template <class T>
    friend Bimodule<T> amplify_bimodule(const Bimodule<T>&, std::size_t);
    template <class T>
    friend Bimodule<T> compress_bimodule(const Bimodule<T>&, const Algebra<T>&, std::size_t);

    Algebra<S> ambient_;
    Subspace<S> space_;
};

// Atomic correspondence: relations on X versus bimodules over the diagonal
// masa of M_{|X|}, via spans of matrix units.
template <class S>
Bimodule<S> from_classical(const Algebra<S>& masa, const FiniteRelation& r) {
    if (masa.n() != r.n()) throw ValidationError("relation size must match the ambient dimension");
    if (!masa.is_masa_diagonal()) throw ValidationError("ambient algebra must be the diagonal masa");
    std::vector<Mat<S>> gens;
    for (auto [x, y] : r.pairs()) gens.push_back(Mat<S>::unit(masa.n(), x, y));
    return Bimodule<S>::from_space(masa, Subspace<S>::span(masa.n(), masa.n(), gens));
}

template <class S>
FiniteRelation to_classical(const Bimodule<S>& v, const FinSet& base) {
    std::size_t n = v.ambient().n();
    if (base.size() != n) throw ValidationError("base set size must match the ambient dimension");
    if (!v.ambient().is_masa_diagonal()) throw ValidationError("ambient algebra must be the diagonal masa");
    std::vector<bool> mask(n * n, false);
    for (const Mat<S>& a : v.space().basis_matrices())
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (!a.at(x, y).is_zero()) mask[x * n + y] = true;
    return FiniteRelation::from_mask(base, std::move(mask));
}

template <class S>
FiniteRelation to_classical(const Bimodule<S>& v) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < v.ambient().n(); ++i) labels.push_back(std::to_string(i));
    return to_classical(v, FinSet::of(labels));
}

// Finite-scale amplification functor: V |-> full d x d blocks over V,
// a bimodule over the commutant of I_d (x) M. The compression by the
// (0,0) block is its inverse.
template <class S>
Bimodule<S> amplify_bimodule(const Bimodule<S>& v, std::size_t d) {
    Algebra<S> big = amplify(v.ambient_, d);
    std::vector<Mat<S>> gens;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Mat<S> eij = Mat<S>::unit(d, i, j);
            for (const Mat<S>& a : v.space_.basis_matrices()) gens.push_back(kron(eij, a));
        }
    return Bimodule<S>::from_space(big, Subspace<S>::span(big.n(), big.n(), gens));
}

// P (.) P with P the (0,0) block projection; on an amplified bimodule this
// recovers the original relation.
template <class S>
Bimodule<S> compress_bimodule(const Bimodule<S>& w, const Algebra<S>& original, std::size_t d) {
    std::size_t n = original.n();
    if (w.ambient_.n() != n * d) throw ValidationError("compression degree does not match the ambient");
    std::vector<Mat<S>> gens;
    for (const Mat<S>& a : w.space_.basis_matrices()) gens.push_back(a.block(0, 0, n, n));
    return Bimodule<S>::from_space(original, Subspace<S>::span(n, n, gens));
}

using BimoduleQ = Bimodule<GaussianRational>;

}  // namespace qrel
