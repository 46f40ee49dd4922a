#include "relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrel {

namespace {

nlohmann::json subset_json(const FinSet& base, Subset s) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t x = 0; x < base.size(); ++x)
        if (s & (Subset(1) << x)) out.push_back(base.labels()[x]);
    return out;
}

void check_same_base(const FinSet& a, const FinSet& b) {
    if (a != b) throw ValidationError("operands live on different base sets");
}

void check_index_range(const FinSet& base, int x) {
    if (x < 0 || static_cast<std::size_t>(x) >= base.size())
        throw ValidationError("atom index out of range");
}

}  // namespace

const char* relation_class_name(RelationClass c) {
    switch (c) {
        case RelationClass::Equivalence: return "equivalence";
        case RelationClass::PartialOrder: return "partial_order";
        case RelationClass::Preorder: return "preorder";
        case RelationClass::Graph: return "graph";
        case RelationClass::Plain: return "plain";
    }
    return "plain";
}

FinSet FinSet::of(std::vector<std::string> labels, std::vector<mpq_class> weights) {
    if (labels.empty()) throw ValidationError("base set must be nonempty");
    if (labels.size() > 20) throw ValidationError("base set too large (limit 20 atoms)");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("atom labels must be distinct");
    if (weights.empty()) weights.assign(labels.size(), mpq_class(1));
    if (weights.size() != labels.size()) throw ValidationError("one weight per atom required");
    for (const mpq_class& w : weights)
        if (w <= 0) throw ValidationError("weights must be positive");
    FinSet s;
    s.labels_ = std::move(labels);
    s.weights_ = std::move(weights);
    return s;
}

FiniteRelation FiniteRelation::of(FinSet base, const std::vector<std::pair<int, int>>& pairs) {
    std::size_t n = base.size();
    std::vector<bool> mask(n * n, false);
    for (auto [x, y] : pairs) {
        check_index_range(base, x);
        check_index_range(base, y);
        mask[static_cast<std::size_t>(x) * n + y] = true;
    }
    return FiniteRelation(std::move(base), std::move(mask));
}

FiniteRelation FiniteRelation::empty(FinSet base) {
    std::size_t n = base.size();
    return FiniteRelation(std::move(base), std::vector<bool>(n * n, false));
}

FiniteRelation FiniteRelation::full(FinSet base) {
    std::size_t n = base.size();
    return FiniteRelation(std::move(base), std::vector<bool>(n * n, true));
}

FiniteRelation FiniteRelation::diagonal(FinSet base) {
    std::size_t n = base.size();
    std::vector<bool> mask(n * n, false);
    for (std::size_t x = 0; x < n; ++x) mask[x * n + x] = true;
    return FiniteRelation(std::move(base), std::move(mask));
}

FiniteRelation FiniteRelation::from_mask(FinSet base, std::vector<bool> mask) {
    if (mask.size() != base.size() * base.size()) throw ValidationError("relation mask has wrong size");
    return FiniteRelation(std::move(base), std::move(mask));
}

std::vector<std::pair<int, int>> FiniteRelation::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t x = 0; x < n(); ++x)
        for (std::size_t y = 0; y < n(); ++y)
            if (has(static_cast<int>(x), static_cast<int>(y))) out.emplace_back(x, y);
    return out;
}

bool MeasurableRelationFin::member_allow_empty(Subset s, Subset t) const {
    for (std::size_t x = 0; x < n(); ++x) {
        if (!(s & (Subset(1) << x))) continue;
        for (std::size_t y = 0; y < n(); ++y)
            if ((t & (Subset(1) << y)) && rel_.has(static_cast<int>(x), static_cast<int>(y))) return true;
    }
    return false;
}

bool MeasurableRelationFin::member(Subset s, Subset t) const {
    if (s == 0 || t == 0) throw ValidationError("member requires nonzero projections");
    if (!subset_leq(s, base().full()) || !subset_leq(t, base().full()))
        throw ValidationError("subset is out of range");
    return member_allow_empty(s, t);
}

// --- filters ----------------------------------------------------------------

std::optional<nlohmann::json> filter_violation(const FinSet& base, const std::vector<Subset>& filter) {
    Subset full = base.full();
    std::vector<bool> in(static_cast<std::size_t>(full) + 1, false);
    for (Subset s : filter) {
        if (s == 0) return nlohmann::json{{"reason", "filter contains the zero projection"}};
        if (!subset_leq(s, full)) throw ValidationError("filter subset out of range");
        in[s] = true;
    }
    // upward closure: join of {s, t} with s <= t must stay in the filter
    for (Subset s = 1; s <= full; ++s) {
        if (!in[s]) continue;
        Subset rest = full & ~s;
        for (Subset extra = rest;; extra = (extra - 1) & rest) {
            Subset t = s | extra;
            if (!in[t])
                return nlohmann::json{{"reason", "filter is not upward closed"},
                                      {"family", nlohmann::json::array({subset_json(base, s), subset_json(base, t)})},
                                      {"join", subset_json(base, t)}};
            if (extra == 0) break;
        }
    }
    // the join of all non-members must itself be a non-member
    Subset r = 0;
    nlohmann::json family = nlohmann::json::array();
    for (Subset s = 1; s <= full; ++s)
        if (!in[s]) {
            r |= s;
            family.push_back(subset_json(base, s));
        }
    if (r != 0 && in[r])
        return nlohmann::json{{"reason", "join of non-members belongs to the filter"},
                              {"family", family},
                              {"join", subset_json(base, r)}};
    return std::nullopt;
}

Subset filter_to_support(const FinSet& base, const std::vector<Subset>& filter) {
    if (auto w = filter_violation(base, filter))
        throw ValidationError("family violates the join axiom", *w);
    Subset full = base.full();
    std::vector<bool> in(static_cast<std::size_t>(full) + 1, false);
    for (Subset s : filter) in[s] = true;
    Subset r = 0;  // join of the projections not in the filter
    for (Subset s = 1; s <= full; ++s)
        if (!in[s]) r |= s;
    return full & ~r;
}

// --- phi --------------------------------------------------------------------

Subset phi_map(const MeasurableRelationFin& r, Subset q) {
    // complement of the join of {p : (p,q) not in R}; an atom survives iff
    // its singleton relates to q
    Subset out = 0;
    for (std::size_t x = 0; x < r.n(); ++x)
        if (r.member_allow_empty(Subset(1) << x, q)) out |= Subset(1) << x;
    return out;
}

MeasurableRelationFin relation_of_phi(const FinSet& base, const std::vector<Subset>& phi_table) {
    Subset full = base.full();
    if (phi_table.size() != static_cast<std::size_t>(full) + 1)
        throw ValidationError("phi table must list all subsets");
    if (phi_table[0] != 0)
        throw ValidationError("phi fails to send zero to zero",
                              nlohmann::json{{"phi_of_empty", subset_json(base, phi_table[0])}});
    for (Subset q = 0; q <= full; ++q) {
        Subset join = 0;
        for (std::size_t y = 0; y < base.size(); ++y)
            if (q & (Subset(1) << y)) join |= phi_table[std::size_t(1) << y];
        if (join != phi_table[q])
            throw ValidationError(
                "phi fails to preserve joins",
                nlohmann::json{{"subset", subset_json(base, q)},
                               {"phi_of_subset", subset_json(base, phi_table[q])},
                               {"join_of_atom_images", subset_json(base, join)}});
    }
    std::size_t n = base.size();
    std::vector<bool> mask(n * n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (phi_table[std::size_t(1) << y] & (Subset(1) << x)) mask[x * n + y] = true;
    return MeasurableRelationFin::from_relation(FiniteRelation::from_mask(base, std::move(mask)));
}

// --- constructions ------------------------------------------------------------

MeasurableRelationFin diagonal_relation(const FinSet& base) {
    return MeasurableRelationFin::from_relation(FiniteRelation::diagonal(base));
}

MeasurableRelationFin transpose(const MeasurableRelationFin& r) {
    std::size_t n = r.n();
    std::vector<bool> mask(n * n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (r.to_relation().has(static_cast<int>(y), static_cast<int>(x))) mask[x * n + y] = true;
    return MeasurableRelationFin::from_relation(FiniteRelation::from_mask(r.base(), std::move(mask)));
}

bool product_condition_forall(const MeasurableRelationFin& a, const MeasurableRelationFin& b, Subset p,
                              Subset r) {
    check_same_base(a.base(), b.base());
    Subset full = a.base().full();
    for (Subset q = 0; q <= full; ++q)
        if (!a.member_allow_empty(p, q) && !b.member_allow_empty(full & ~q, r)) return false;
    return true;
}

bool product_condition_exists(const MeasurableRelationFin& a, const MeasurableRelationFin& b, Subset p,
                              Subset r) {
    check_same_base(a.base(), b.base());
    Subset full = a.base().full();
    for (Subset q = 1; q <= full; ++q) {
        bool ok = true;
        for (Subset sub = q; sub != 0; sub = (sub - 1) & q) {  // nonempty submasks of q
            if (!a.member_allow_empty(p, sub) || !b.member_allow_empty(sub, r)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

MeasurableRelationFin compose(const MeasurableRelationFin& a, const MeasurableRelationFin& b) {
    check_same_base(a.base(), b.base());
    std::size_t n = a.n();
    std::vector<bool> mask(n * n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!a.to_relation().has(static_cast<int>(x), static_cast<int>(y))) continue;
            for (std::size_t z = 0; z < n; ++z)
                if (b.to_relation().has(static_cast<int>(y), static_cast<int>(z))) mask[x * n + z] = true;
        }
    auto out = MeasurableRelationFin::from_relation(FiniteRelation::from_mask(a.base(), std::move(mask)));
    if (n <= 4) {
        // the two projection-language conditions and classical composition
        // must coincide on every subset pair
        Subset full = a.base().full();
        for (Subset p = 1; p <= full; ++p)
            for (Subset r = 1; r <= full; ++r) {
                bool classical = out.member_allow_empty(p, r);
                if (classical != product_condition_forall(a, b, p, r) ||
                    classical != product_condition_exists(a, b, p, r))
                    throw std::logic_error("product conditions disagree with classical composition");
            }
    }
    return out;
}

bool is_reflexive(const MeasurableRelationFin& r) {
    for (std::size_t x = 0; x < r.n(); ++x)
        if (!r.to_relation().has(static_cast<int>(x), static_cast<int>(x))) return false;
    return true;
}

bool is_symmetric(const MeasurableRelationFin& r) { return transpose(r) == r; }

bool is_antisymmetric(const MeasurableRelationFin& r) {
    // R meet R^T inside the diagonal
    for (std::size_t x = 0; x < r.n(); ++x)
        for (std::size_t y = 0; y < r.n(); ++y)
            if (x != y && r.to_relation().has(static_cast<int>(x), static_cast<int>(y)) &&
                r.to_relation().has(static_cast<int>(y), static_cast<int>(x)))
                return false;
    return true;
}

bool is_transitive(const MeasurableRelationFin& r) {
    std::size_t n = r.n();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!r.to_relation().has(static_cast<int>(x), static_cast<int>(y))) continue;
            for (std::size_t z = 0; z < n; ++z)
                if (r.to_relation().has(static_cast<int>(y), static_cast<int>(z)) &&
                    !r.to_relation().has(static_cast<int>(x), static_cast<int>(z)))
                    return false;
        }
    return true;
}

RelationClass classify(const MeasurableRelationFin& r) {
    bool refl = is_reflexive(r), sym = is_symmetric(r), anti = is_antisymmetric(r), trans = is_transitive(r);
    if (refl && sym && trans) return RelationClass::Equivalence;
    if (refl && anti && trans) return RelationClass::PartialOrder;
    if (refl && trans) return RelationClass::Preorder;
    if (refl && sym) return RelationClass::Graph;
    return RelationClass::Plain;
}

FiniteRelation pushforward(const std::vector<int>& f, const FiniteRelation& r, const FinSet& target) {
    if (f.size() != r.n()) throw ValidationError("map must be total on the source set");
    for (int v : f) check_index_range(target, v);
    std::size_t m = target.size();
    std::vector<bool> mask(m * m, false);
    for (auto [x, y] : r.pairs()) mask[static_cast<std::size_t>(f[x]) * m + f[y]] = true;
    return FiniteRelation::from_mask(target, std::move(mask));
}

MeasurableRelationFin pullback(const std::vector<int>& g, const MeasurableRelationFin& r, const FinSet& source) {
    if (g.size() != source.size()) throw ValidationError("map must be total on the source set");
    for (int v : g) check_index_range(r.base(), v);
    std::size_t m = source.size();
    std::vector<bool> mask(m * m, false);
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v)
            if (r.to_relation().has(g[u], g[v])) mask[u * m + v] = true;
    return MeasurableRelationFin::from_relation(FiniteRelation::from_mask(source, std::move(mask)));
}

// --- lattices ----------------------------------------------------------------

SubsetLattice SubsetLattice::of(FinSet base, std::vector<Subset> members) {
    Subset full = base.full();
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (Subset s : members)
        if (!subset_leq(s, full)) throw ValidationError("lattice member out of range");
    auto has = [&](Subset s) { return std::binary_search(members.begin(), members.end(), s); };
    if (!has(0) || !has(full))
        throw ValidationError("lattice must contain the zero and the identity projection");
    for (Subset a : members)
        for (Subset b : members) {
            if (!has(a | b))
                throw ValidationError("lattice is not closed under joins",
                                      nlohmann::json{{"left", subset_json(base, a)},
                                                     {"right", subset_json(base, b)},
                                                     {"missing", subset_json(base, a | b)}});
            if (!has(a & b))
                throw ValidationError("lattice is not closed under meets",
                                      nlohmann::json{{"left", subset_json(base, a)},
                                                     {"right", subset_json(base, b)},
                                                     {"missing", subset_json(base, a & b)}});
        }
    return SubsetLattice(std::move(base), std::move(members));
}

bool SubsetLattice::contains(Subset s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
}

bool SubsetLattice::is_boolean() const {
    Subset full = base_.full();
    for (Subset s : members_)
        if (!contains(full & ~s)) return false;
    return true;
}

SubsetLattice lattice_of_preorder(const MeasurableRelationFin& r) {
    if (!is_reflexive(r) || !is_transitive(r)) {
        nlohmann::json w;
        w["reflexive"] = is_reflexive(r);
        w["transitive"] = is_transitive(r);
        throw ValidationError("input is not a measurable preorder", w);
    }
    Subset full = r.base().full();
    std::vector<Subset> members;
    for (Subset s = 0; s <= full; ++s)
        if (!r.member_allow_empty(full & ~s, s)) members.push_back(s);
    return SubsetLattice::of(r.base(), std::move(members));
}

MeasurableRelationFin preorder_of_lattice(const SubsetLattice& l) {
    std::size_t n = l.base().size();
    // low(y): the meet of all lattice members containing y
    std::vector<Subset> low(n, l.base().full());
    for (std::size_t y = 0; y < n; ++y)
        for (Subset m : l.members())
            if (m & (Subset(1) << y)) low[y] &= m;
    std::vector<bool> mask(n * n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (low[y] & (Subset(1) << x)) mask[x * n + y] = true;
    return MeasurableRelationFin::from_relation(FiniteRelation::from_mask(l.base(), std::move(mask)));
}

std::pair<Subset, Subset> reduce_pair(const MeasurableRelationFin& r, Subset p, Subset q) {
    if (!r.member(p, q)) throw ValidationError("reduction requires a related pair");
    Subset p1 = 0, q1 = 0;
    for (std::size_t x = 0; x < r.n(); ++x) {
        Subset ax = Subset(1) << x;
        if ((p & ax) && r.member_allow_empty(ax, q)) p1 |= ax;
        if ((q & ax) && r.member_allow_empty(p, ax)) q1 |= ax;
    }
    return {p1, q1};
}

// --- pseudometrics ------------------------------------------------------------

FinPseudometric FinPseudometric::of(FinSet base, std::vector<ExtRat> distances) {
    std::size_t n = base.size();
    if (distances.size() != n * n) throw ValidationError("distance matrix has wrong size");
    auto at = [&](std::size_t x, std::size_t y) -> const ExtRat& { return distances[x * n + y]; };
    for (std::size_t x = 0; x < n; ++x) {
        if (!(at(x, x) == ExtRat::of(0))) throw ValidationError("pseudometric diagonal must vanish");
        for (std::size_t y = 0; y < n; ++y) {
            if (!(at(x, y) == at(y, x))) throw ValidationError("pseudometric must be symmetric");
            if (!at(x, y).inf && at(x, y).v < 0) throw ValidationError("distances must be nonnegative");
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (!(at(x, z) <= at(x, y) + at(y, z)))
                    throw ValidationError("triangle inequality fails",
                                          nlohmann::json{{"x", base.labels()[x]},
                                                         {"y", base.labels()[y]},
                                                         {"z", base.labels()[z]}});
    return FinPseudometric(std::move(base), std::move(distances));
}

ExtRat rho(const FinPseudometric& pm, Subset s, Subset t) {
    if (s == 0 || t == 0) throw ValidationError("rho requires nonzero projections");
    ExtRat best = ExtRat::infinity();
    for (std::size_t x = 0; x < pm.n(); ++x) {
        if (!(s & (Subset(1) << x))) continue;
        for (std::size_t y = 0; y < pm.n(); ++y)
            if (t & (Subset(1) << y)) {
                const ExtRat& d = pm.at(static_cast<int>(x), static_cast<int>(y));
                if (d < best) best = d;
            }
    }
    return best;
}

MeasurableRelationFin relation_at(const FinPseudometric& pm, const mpq_class& t) {
    if (t <= 0) throw ValidationError("relation threshold must be positive");
    std::size_t n = pm.n();
    std::vector<bool> mask(n * n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (pm.at(static_cast<int>(x), static_cast<int>(y)) < ExtRat::of(t)) mask[x * n + y] = true;
    auto out = MeasurableRelationFin::from_relation(FiniteRelation::from_mask(pm.base(), std::move(mask)));
    if (!is_reflexive(out) || !is_symmetric(out))
        throw std::logic_error("distance relation must be reflexive and symmetric");
    return out;
}

double LipschitzValue::value() const {
    if (inf) return std::numeric_limits<double>::infinity();
    return std::sqrt(sq.get_d());
}

LipschitzValue lipschitz(const FinPseudometric& pm, const std::vector<GaussianRational>& f) {
    if (f.size() != pm.n()) throw ValidationError("function must assign a value to every atom");
    // the min/min ratio over S x T is dominated by the minimizing atom
    // pair, so the supremum over subsets reduces to atom pairs
    LipschitzValue best{false, 0};
    for (std::size_t x = 0; x < pm.n(); ++x)
        for (std::size_t y = 0; y < pm.n(); ++y) {
            mpq_class num = (f[x] - f[y]).norm2();  // |f(x)-f(y)|^2
            const ExtRat& d = pm.at(static_cast<int>(x), static_cast<int>(y));
            if (d.inf) continue;
            if (d.v == 0) {
                if (num != 0) return LipschitzValue{true, 0};  // 0/0 = 0, positive/0 = infinity
                continue;
            }
            mpq_class ratio = num / (d.v * d.v);
            if (!best.inf && ratio > best.sq) best.sq = ratio;
        }
    return best;
}

std::vector<mpq_class> distance_function(const FinPseudometric& pm, Subset r, const mpq_class& c) {
    if (r == 0) throw ValidationError("distance function requires a nonzero projection");
    if (c <= 0) throw ValidationError("cutoff must be positive");
    std::vector<mpq_class> out(pm.n());
    for (std::size_t x = 0; x < pm.n(); ++x) {
        ExtRat d = rho(pm, Subset(1) << x, r);
        out[x] = (d.inf || d.v > c) ? c : d.v;
    }
    return out;
}

}  // namespace qrel
