#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "relations.hpp"

using namespace qrel;

namespace {

FinSet two() { return FinSet::of({"a", "b"}); }
FinSet three() { return FinSet::of({"x", "y", "z"}); }

MeasurableRelationFin rel(FinSet base, std::vector<std::pair<int, int>> pairs) {
    return MeasurableRelationFin::from_relation(FiniteRelation::of(std::move(base), pairs));
}

MeasurableRelationFin random_relation(test::Rng& rng, const FinSet& base, int density_pct = 40) {
    std::size_t n = base.size();
    std::vector<bool> mask(n * n, false);
    for (std::size_t i = 0; i < n * n; ++i) mask[i] = rng.integer(0, 99) < density_pct;
    return MeasurableRelationFin::from_relation(FiniteRelation::from_mask(base, std::move(mask)));
}

// literal (*) check in the atomic case: monotonicity plus the singleton
// witness property, which together are equivalent to the join axiom over
// arbitrary families
bool satisfies_star(const MeasurableRelationFin& r) {
    Subset full = r.base().full();
    for (Subset s = 1; s <= full; ++s)
        for (Subset t = 1; t <= full; ++t) {
            bool m = r.member(s, t);
            bool witness = false;
            for (std::size_t x = 0; x < r.n() && !witness; ++x)
                for (std::size_t y = 0; y < r.n() && !witness; ++y)
                    if ((s >> x & 1) && (t >> y & 1) && r.member(Subset(1) << x, Subset(1) << y))
                        witness = true;
            if (m != witness) return false;
            if (m)
                for (Subset s2 = s; s2 <= full; ++s2)
                    for (Subset t2 = t; t2 <= full; ++t2)
                        if (subset_leq(s, s2) && subset_leq(t, t2) && !r.member(s2, t2)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("filter_to_support on two atoms") {
    FinSet base = two();
    SUBCASE("all nonempty subsets") {
        CHECK(filter_to_support(base, {1, 2, 3}) == 3);
    }
    SUBCASE("principal filter at a") {
        // subsets containing a: {a}, {a,b}
        CHECK(filter_to_support(base, {1, 3}) == 1);
    }
    SUBCASE("empty filter") {
        CHECK(filter_to_support(base, {}) == 0);
    }
    SUBCASE("support reproduces membership") {
        Subset p = filter_to_support(base, {1, 3});
        for (Subset q = 1; q <= 3; ++q) {
            bool in_f = (q == 1 || q == 3);
            CHECK(in_f == ((p & q) != 0));
        }
    }
}

TEST_CASE("filter violations report witnesses") {
    FinSet base = two();
    // {a} present but {a,b} missing: not upward closed
    CHECK_THROWS_AS(filter_to_support(base, {1}), ValidationError);
    try {
        filter_to_support(base, {1});
    } catch (const ValidationError& e) {
        CHECK(e.witness().contains("family"));
    }
    // {a},{b} non-members but their join {a,b} is a member
    CHECK_THROWS_AS(filter_to_support(base, {3}), ValidationError);
}

TEST_CASE("member semantics") {
    auto r = rel(two(), {{0, 1}});
    CHECK(r.member(1, 2));        // ({a},{b})
    CHECK_FALSE(r.member(2, 1));  // ({b},{a})
    CHECK(r.member(3, 3));
    CHECK_THROWS_AS(r.member(0, 1), ValidationError);
    CHECK_THROWS_AS(r.member(1, 0), ValidationError);
}

TEST_CASE("join axiom holds for random relations up to five atoms") {
    test::Rng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + trial % 4;  // up to 5
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
        CHECK(satisfies_star(random_relation(rng, FinSet::of(labels))));
    }
}

TEST_CASE("phi_map examples") {
    FinSet base = two();
    auto diag = diagonal_relation(base);
    CHECK(phi_map(diag, 1) == 1);
    CHECK(phi_map(diag, 0) == 0);
    auto full = MeasurableRelationFin::from_relation(FiniteRelation::full(base));
    CHECK(phi_map(full, 1) == 3);
}

TEST_CASE("phi round trips and join preservation") {
    test::Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 3;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
        FinSet base = FinSet::of(labels);
        auto r = random_relation(rng, base);

        std::vector<Subset> table(std::size_t(1) << n);
        for (Subset q = 0; q < table.size(); ++q) {
            table[q] = phi_map(r, q);
            // join preservation, atomwise
            Subset join = 0;
            for (std::size_t y = 0; y < n; ++y)
                if (q >> y & 1) join |= phi_map(r, Subset(1) << y);
            CHECK(table[q] == join);
        }
        CHECK(table[0] == 0);
        CHECK(relation_of_phi(base, table) == r);
    }
}

TEST_CASE("relation_of_phi rejects non-join-preserving tables") {
    FinSet base = two();
    // phi({a,b}) != phi({a}) | phi({b})
    std::vector<Subset> bad = {0, 1, 1, 3};
    CHECK_THROWS_AS(relation_of_phi(base, bad), ValidationError);
    std::vector<Subset> bad0 = {1, 1, 1, 1};
    CHECK_THROWS_AS(relation_of_phi(base, bad0), ValidationError);
}

TEST_CASE("compose, transpose, classify basics") {
    FinSet base = three();
    auto r1 = rel(base, {{0, 1}});
    auto r2 = rel(base, {{1, 2}});
    CHECK(compose(r1, r2) == rel(base, {{0, 2}}));
    test::Rng rng(9);
    auto r = random_relation(rng, base);
    CHECK(transpose(transpose(r)) == r);
    auto diag = diagonal_relation(base);
    CHECK(is_reflexive(diag));
    CHECK(is_symmetric(diag));
    CHECK(is_antisymmetric(diag));
    CHECK(is_transitive(diag));
    CHECK(classify(diag) == RelationClass::Equivalence);
}

TEST_CASE("product conditions agree with classical composition exhaustively on three atoms") {
    test::Rng rng(77);
    FinSet base = three();
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_relation(rng, base);
        auto b = random_relation(rng, base);
        auto c = compose(a, b);
        for (Subset p = 1; p <= base.full(); ++p)
            for (Subset r = 1; r <= base.full(); ++r) {
                bool classical = c.member(p, r);
                CHECK(classical == product_condition_forall(a, b, p, r));
                CHECK(classical == product_condition_exists(a, b, p, r));
            }
    }
}

TEST_CASE("pushforward can create compositions that vanish upstream") {
    FinSet y = FinSet::of({"x", "y1", "y2", "z"});
    FinSet x = three();
    std::vector<int> f = {0, 1, 1, 2};
    auto r = rel(y, {{0, 1}});
    auto rp = rel(y, {{2, 3}});
    CHECK(compose(r, rp) == rel(y, {}));
    auto fr = MeasurableRelationFin::from_relation(pushforward(f, r.to_relation(), x));
    auto frp = MeasurableRelationFin::from_relation(pushforward(f, rp.to_relation(), x));
    CHECK(compose(fr, frp) == rel(x, {{0, 2}}));
}

TEST_CASE("pushforward along the identity is the identity") {
    test::Rng rng(13);
    FinSet base = three();
    auto r = random_relation(rng, base);
    CHECK(pushforward({0, 1, 2}, r.to_relation(), base) == r.to_relation());
}

TEST_CASE("pullback of the diagonal contains the diagonal") {
    test::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t nx = 1 + trial % 3, ny = 1 + (trial / 3) % 3;
        std::vector<std::string> lx, ly;
        for (std::size_t i = 0; i < nx; ++i) lx.push_back("x" + std::to_string(i));
        for (std::size_t i = 0; i < ny; ++i) ly.push_back("y" + std::to_string(i));
        FinSet X = FinSet::of(lx), Y = FinSet::of(ly);
        std::vector<int> g(ny);
        for (std::size_t i = 0; i < ny; ++i) g[i] = static_cast<int>(rng.integer(0, nx - 1));
        auto pulled = pullback(g, diagonal_relation(X), Y);
        for (std::size_t u = 0; u < ny; ++u) CHECK(pulled.to_relation().has(u, u));
    }
}

TEST_CASE("lattice correspondence examples") {
    FinSet base = two();
    SUBCASE("diagonal gives the full Boolean lattice") {
        auto l = lattice_of_preorder(diagonal_relation(base));
        CHECK(l.members() == std::vector<Subset>{0, 1, 2, 3});
        CHECK(l.is_boolean());
    }
    SUBCASE("trivial lattice gives the full relation") {
        auto l = SubsetLattice::of(base, {0, 3});
        CHECK(preorder_of_lattice(l) == MeasurableRelationFin::from_relation(FiniteRelation::full(base)));
    }
    SUBCASE("a <= b preorder round trips") {
        auto r = rel(base, {{0, 0}, {1, 1}, {0, 1}});
        auto l = lattice_of_preorder(r);
        CHECK(l.members() == std::vector<Subset>{0, 1, 3});
        CHECK_FALSE(l.is_boolean());
        CHECK(preorder_of_lattice(l) == r);
    }
}

TEST_CASE("lattice correspondence round trips on random preorders") {
    test::Rng rng(23);
    FinSet base = three();
    int seen = 0;
    while (seen < 15) {
        auto r = random_relation(rng, base, 50);
        // reflexive-transitive closure gives a preorder
        std::size_t n = base.size();
        std::vector<bool> m = r.to_relation().mask();
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (m[i * n + k] && m[k * n + j]) m[i * n + j] = true;
        auto pre = MeasurableRelationFin::from_relation(FiniteRelation::from_mask(base, m));
        auto l = lattice_of_preorder(pre);
        CHECK(preorder_of_lattice(l) == pre);
        CHECK(l.is_boolean() == (classify(pre) == RelationClass::Equivalence));
        ++seen;
    }
}

TEST_CASE("lattice of a preorder round trips back to the lattice") {
    // every complete 0,1-sublattice of subsets of a 3-element set
    FinSet base = three();
    Subset full = base.full();
    for (std::uint32_t pick = 0; pick < (1u << 6); ++pick) {
        // candidate member sets: always 0 and full, optionally the 6 others
        std::vector<Subset> members = {0, full};
        std::uint32_t bit = 0;
        for (Subset s = 1; s < full; ++s) {
            if (pick >> bit & 1) members.push_back(s);
            ++bit;
        }
        // keep only genuine lattices
        bool valid = true;
        try {
            auto l = SubsetLattice::of(base, members);
            auto r = preorder_of_lattice(l);
            CHECK(lattice_of_preorder(r) == l);
        } catch (const ValidationError&) {
            valid = false;
        }
        (void)valid;
    }
}

TEST_CASE("reduction principle produces universal pairs") {
    test::Rng rng(31);
    FinSet base = three();
    for (int trial = 0; trial < 25; ++trial) {
        auto r = random_relation(rng, base);
        Subset full = base.full();
        for (Subset p = 1; p <= full; ++p)
            for (Subset q = 1; q <= full; ++q) {
                if (!r.member(p, q)) continue;
                auto [p1, q1] = reduce_pair(r, p, q);
                REQUIRE(p1 != 0);
                REQUIRE(q1 != 0);
                CHECK(subset_leq(p1, p));
                CHECK(subset_leq(q1, q));
                for (Subset pp = p1; pp != 0; pp = (pp - 1) & p1) CHECK(r.member(pp, q1));
                for (Subset qq = q1; qq != 0; qq = (qq - 1) & q1) CHECK(r.member(p1, qq));
            }
    }
}

TEST_CASE("pseudometric validation") {
    FinSet base = two();
    auto q = [](long a, long b = 1) { return ExtRat::of(mpq_class(a, b)); };
    CHECK_THROWS_AS(FinPseudometric::of(base, {q(1), q(1), q(1), q(0)}), ValidationError);
    CHECK_THROWS_AS(FinPseudometric::of(base, {q(0), q(1), q(2), q(0)}), ValidationError);
    FinSet tri = three();
    // 2 > 1 + 1/2 violates the triangle inequality
    CHECK_THROWS_AS(FinPseudometric::of(tri, {q(0), q(1), q(2), q(1), q(0), q(1, 2), q(2), q(1, 2), q(0)}),
                    ValidationError);
}

TEST_CASE("lipschitz examples") {
    auto q = [](long a, long b = 1) { return ExtRat::of(mpq_class(a, b)); };
    SUBCASE("two points at distance one") {
        auto pm = FinPseudometric::of(two(), {q(0), q(1), q(1), q(0)});
        auto lip = lipschitz(pm, {GaussianRational(0), GaussianRational(1)});
        CHECK(lip == LipschitzValue{false, 1});
        CHECK(lipschitz(pm, {GaussianRational(5), GaussianRational(5)}) == LipschitzValue{false, 0});
    }
    SUBCASE("three points on a line") {
        auto pm = FinPseudometric::of(three(), {q(0), q(1), q(2), q(1), q(0), q(1), q(2), q(1), q(0)});
        auto lip = lipschitz(pm, {GaussianRational(0), GaussianRational(2), GaussianRational(2)});
        CHECK(lip == LipschitzValue{false, 4});  // squared value
        CHECK(lip.value() == doctest::Approx(2.0));
    }
}

namespace {

// exponential oracle: the supremum over all subset pairs of
// dist(f(S), f(T)) / rho(S, T)
LipschitzValue lipschitz_all_subsets(const FinPseudometric& pm, const std::vector<GaussianRational>& f) {
    Subset full = pm.base().full();
    LipschitzValue best{false, 0};
    for (Subset s = 1; s <= full; ++s)
        for (Subset t = 1; t <= full; ++t) {
            // dist between finite value sets: min over pairs
            bool first = true;
            mpq_class dist_sq = 0;
            for (std::size_t x = 0; x < pm.n(); ++x)
                for (std::size_t y = 0; y < pm.n(); ++y) {
                    if (!(s >> x & 1) || !(t >> y & 1)) continue;
                    mpq_class d2 = (f[x] - f[y]).norm2();
                    if (first || d2 < dist_sq) dist_sq = d2;
                    first = false;
                }
            ExtRat den = rho(pm, s, t);
            if (den.inf) continue;
            if (den.v == 0) {
                if (dist_sq != 0) return LipschitzValue{true, 0};
                continue;
            }
            mpq_class ratio = dist_sq / (den.v * den.v);
            if (!best.inf && ratio > best.sq) best.sq = ratio;
        }
    return best;
}

FinPseudometric random_metric(test::Rng& rng, const FinSet& base) {
    std::size_t n = base.size();
    // random nonnegative symmetric matrix, repaired to satisfy the triangle
    // inequality by iterated tightening (Floyd-Warshall on rationals)
    std::vector<ExtRat> d(n * n, ExtRat::of(0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            ExtRat v = rng.integer(0, 6) == 0 ? ExtRat::infinity()
                                              : ExtRat::of(mpq_class(rng.integer(0, 8), 1 + rng.integer(0, 3)));
            d[x * n + y] = v;
            d[y * n + x] = v;
        }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                ExtRat via = d[x * n + k] + d[k * n + y];
                if (via < d[x * n + y]) d[x * n + y] = via;
            }
    return FinPseudometric::of(base, d);
}

}  // namespace

TEST_CASE("atom-pair lipschitz equals the all-subsets oracle") {
    test::Rng rng(41);
    FinSet base = FinSet::of({"p0", "p1", "p2", "p3"});
    for (int trial = 0; trial < 30; ++trial) {
        auto pm = random_metric(rng, base);
        std::vector<GaussianRational> f;
        for (std::size_t i = 0; i < 4; ++i) f.push_back(rng.scalar(-4, 4));
        CHECK(lipschitz(pm, f) == lipschitz_all_subsets(pm, f));
    }
}

TEST_CASE("distance relations compose subadditively") {
    test::Rng rng(43);
    FinSet base = FinSet::of({"p0", "p1", "p2", "p3"});
    for (int trial = 0; trial < 20; ++trial) {
        auto pm = random_metric(rng, base);
        mpq_class s(1 + rng.integer(0, 5), 1 + rng.integer(0, 2));
        mpq_class t(1 + rng.integer(0, 5), 1 + rng.integer(0, 2));
        auto rs = relation_at(pm, s);
        auto rt = relation_at(pm, t);
        auto rst = relation_at(pm, s + t);
        auto prod = compose(rs, rt);
        for (auto [x, y] : prod.to_relation().pairs()) CHECK(rst.to_relation().has(x, y));
    }
}

TEST_CASE("distance functions have lipschitz number at most one") {
    test::Rng rng(47);
    FinSet base = FinSet::of({"p0", "p1", "p2", "p3"});
    for (int trial = 0; trial < 30; ++trial) {
        auto pm = random_metric(rng, base);
        Subset r = static_cast<Subset>(rng.integer(1, base.full()));
        mpq_class c(1 + rng.integer(0, 5), 1 + rng.integer(0, 2));
        auto f = distance_function(pm, r, c);
        std::vector<GaussianRational> fv;
        for (const mpq_class& v : f) fv.push_back(GaussianRational::from_rational(v));
        CHECK(lipschitz(pm, fv) <= LipschitzValue{false, 1});
    }
}

TEST_CASE("rho is the minimum over atom pairs") {
    auto q = [](long a) { return ExtRat::of(mpq_class(a)); };
    auto pm = FinPseudometric::of(three(), {q(0), q(1), q(2), q(1), q(0), q(1), q(2), q(1), q(0)});
    CHECK(rho(pm, 0b001, 0b110) == ExtRat::of(1));
    CHECK(rho(pm, 0b111, 0b111) == ExtRat::of(0));
    CHECK_THROWS_AS(rho(pm, 0, 1), ValidationError);
}
