#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "scalar.hpp"

namespace qrel {

// Subsets of a finite atomic space, as bitmasks over atoms.
using Subset = std::uint32_t;

inline int subset_size(Subset s) { return __builtin_popcount(s); }
inline bool subset_leq(Subset a, Subset b) { return (a & ~b) == 0; }

// Finite atomic measure space: labelled atoms with positive rational
// weights. Weights are carried for display; relation logic never consults
// them (null sets are empty in the atomic case).
class FinSet {
public:
    static FinSet of(std::vector<std::string> labels, std::vector<mpq_class> weights = {});

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<mpq_class>& weights() const { return weights_; }
    Subset full() const { return (Subset(1) << labels_.size()) - 1; }

    friend bool operator==(const FinSet& a, const FinSet& b) { return a.labels_ == b.labels_; }
    friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }

private:
    std::vector<std::string> labels_;
    std::vector<mpq_class> weights_;
};

// A relation on a finite set: a subset of X x X.
class FiniteRelation {
public:
    static FiniteRelation of(FinSet base, const std::vector<std::pair<int, int>>& pairs);
    static FiniteRelation empty(FinSet base);
    static FiniteRelation full(FinSet base);
    static FiniteRelation diagonal(FinSet base);
    static FiniteRelation from_mask(FinSet base, std::vector<bool> mask);

    const FinSet& base() const { return base_; }
    std::size_t n() const { return base_.size(); }
    bool has(int x, int y) const { return mask_[static_cast<std::size_t>(x) * n() + y]; }
    const std::vector<bool>& mask() const { return mask_; }
    std::vector<std::pair<int, int>> pairs() const;

    friend bool operator==(const FiniteRelation& a, const FiniteRelation& b) {
        return a.base_ == b.base_ && a.mask_ == b.mask_;
    }
    friend bool operator!=(const FiniteRelation& a, const FiniteRelation& b) { return !(a == b); }

private:
    FiniteRelation(FinSet base, std::vector<bool> mask) : base_(std::move(base)), mask_(std::move(mask)) {}

    FinSet base_;
    std::vector<bool> mask_;
};

// Finite measurable relation, realized on the Boolean lattice of subsets.
// Stored via its underlying classical relation; the public interface is the
// subset-pair predicate member(S,T), which keeps the projection language
// primary. The join axiom holds by construction.
class MeasurableRelationFin {
public:
    static MeasurableRelationFin from_relation(FiniteRelation r) { return MeasurableRelationFin(std::move(r)); }
    const FiniteRelation& to_relation() const { return rel_; }

    const FinSet& base() const { return rel_.base(); }
    std::size_t n() const { return rel_.n(); }

    // member(S,T) <=> (S x T) intersects the underlying relation.
    // Empty arguments are rejected: pairs are of nonzero projections.
    bool member(Subset s, Subset t) const;
    // Internal convention used by derived formulas: empty side => false.
    bool member_allow_empty(Subset s, Subset t) const;

    friend bool operator==(const MeasurableRelationFin& a, const MeasurableRelationFin& b) {
        return a.rel_ == b.rel_;
    }
    friend bool operator!=(const MeasurableRelationFin& a, const MeasurableRelationFin& b) { return !(a == b); }

private:
    explicit MeasurableRelationFin(FiniteRelation r) : rel_(std::move(r)) {}

    FiniteRelation rel_;
};

// Complete 0,1-sublattice of the Boolean algebra of subsets.
class SubsetLattice {
public:
    // Validates: contains empty and full, closed under union and
    // intersection. Reports a witness pair on failure.
    static SubsetLattice of(FinSet base, std::vector<Subset> members);

    const FinSet& base() const { return base_; }
    const std::vector<Subset>& members() const { return members_; }
    bool contains(Subset s) const;
    bool is_boolean() const;  // additionally closed under complement

    friend bool operator==(const SubsetLattice& a, const SubsetLattice& b) {
        return a.base_ == b.base_ && a.members_ == b.members_;
    }

private:
    SubsetLattice(FinSet base, std::vector<Subset> members)
        : base_(std::move(base)), members_(std::move(members)) {}

    FinSet base_;
    std::vector<Subset> members_;  // sorted
};

// Rational value extended with +infinity (disconnected atoms).
struct ExtRat {
    bool inf = false;
    mpq_class v = 0;

    static ExtRat infinity() { return {true, 0}; }
    static ExtRat of(mpq_class q) { return {false, std::move(q)}; }

    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        if (a.inf || b.inf) return infinity();
        return of(a.v + b.v);
    }
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (a.inf) return false;
        if (b.inf) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        return a.inf == b.inf && (a.inf || a.v == b.v);
    }
};

// Finite measurable pseudometric: atom distances in [0, inf] with zero
// diagonal, symmetry, and the triangle inequality. rho on subset pairs is
// the min over atom pairs, as forced by the join axiom for distances.
class FinPseudometric {
public:
    static FinPseudometric of(FinSet base, std::vector<ExtRat> distances);

    const FinSet& base() const { return base_; }
    std::size_t n() const { return base_.size(); }
    const ExtRat& at(int x, int y) const { return d_[static_cast<std::size_t>(x) * n() + y]; }

private:
    FinPseudometric(FinSet base, std::vector<ExtRat> d) : base_(std::move(base)), d_(std::move(d)) {}

    FinSet base_;
    std::vector<ExtRat> d_;
};

// Lipschitz number, kept in exact squared form; the displayed value is the
// square root.
struct LipschitzValue {
    bool inf = false;
    mpq_class sq = 0;

    double value() const;
    friend bool operator==(const LipschitzValue& a, const LipschitzValue& b) {
        return a.inf == b.inf && (a.inf || a.sq == b.sq);
    }
    friend bool operator<=(const LipschitzValue& a, const LipschitzValue& b) {
        if (a.inf) return b.inf;
        if (b.inf) return true;
        return a.sq <= b.sq;
    }
};

enum class RelationClass { Equivalence, PartialOrder, Preorder, Graph, Plain };
const char* relation_class_name(RelationClass c);

// --- filters and supports -------------------------------------------------

// Checks the filter axiom: join of a family belongs to F iff some member
// does. Returns a witness family on violation.
std::optional<nlohmann::json> filter_violation(const FinSet& base, const std::vector<Subset>& filter);

// The support projection p with (q in F <=> p & q != 0): complement of the
// join of all subsets outside F. Throws with the witness when F is invalid.
Subset filter_to_support(const FinSet& base, const std::vector<Subset>& filter);

// --- the join-preserving map phi ------------------------------------------

Subset phi_map(const MeasurableRelationFin& r, Subset q);
// phi given as a table over all 2^n subsets; validated to send empty to
// empty and preserve unions (witness reported otherwise).
MeasurableRelationFin relation_of_phi(const FinSet& base, const std::vector<Subset>& phi_table);

// --- constructions and predicates ------------------------------------------

MeasurableRelationFin diagonal_relation(const FinSet& base);
MeasurableRelationFin transpose(const MeasurableRelationFin& r);
MeasurableRelationFin compose(const MeasurableRelationFin& a, const MeasurableRelationFin& b);

// The two projection-language product conditions; classical composition
// must agree with both on every subset pair (checked inside compose at
// small size, and exhaustively in tests).
bool product_condition_forall(const MeasurableRelationFin& a, const MeasurableRelationFin& b, Subset p, Subset r);
bool product_condition_exists(const MeasurableRelationFin& a, const MeasurableRelationFin& b, Subset p, Subset r);

bool is_reflexive(const MeasurableRelationFin& r);
bool is_symmetric(const MeasurableRelationFin& r);
bool is_antisymmetric(const MeasurableRelationFin& r);
bool is_transitive(const MeasurableRelationFin& r);
RelationClass classify(const MeasurableRelationFin& r);

FiniteRelation pushforward(const std::vector<int>& f, const FiniteRelation& r, const FinSet& target);
MeasurableRelationFin pullback(const std::vector<int>& g, const MeasurableRelationFin& r, const FinSet& source);

// --- lattice correspondence -------------------------------------------------

SubsetLattice lattice_of_preorder(const MeasurableRelationFin& r);
MeasurableRelationFin preorder_of_lattice(const SubsetLattice& l);

// Constructive form of the reduction principle: given member(p,q), nonzero
// p' <= p and q' <= q such that every nonzero p'' <= p', q'' <= q' satisfies
// member(p'',q') and member(p',q'').
std::pair<Subset, Subset> reduce_pair(const MeasurableRelationFin& r, Subset p, Subset q);

// --- pseudometrics ----------------------------------------------------------

ExtRat rho(const FinPseudometric& pm, Subset s, Subset t);
MeasurableRelationFin relation_at(const FinPseudometric& pm, const mpq_class& t);
LipschitzValue lipschitz(const FinPseudometric& pm, const std::vector<GaussianRational>& f);
std::vector<mpq_class> distance_function(const FinPseudometric& pm, Subset r, const mpq_class& c);

}  // namespace qrel
