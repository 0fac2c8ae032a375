#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "bn/construct.hpp"
#include "bn/iso.hpp"

using namespace bn;

namespace {

BoolNet random_fixed_point_free(int n, RandomSource rs) {
    BoolNet f = random_network(n, rs);
    for (Config x = 0; x < f.size(); ++x)
        if (f(x) == x) f.table[x] = x ^ 1;
    return f;
}

bool x_converging(const BoolNet& h, const std::vector<Config>& X) {
    std::set<Config> inX(X.begin(), X.end());
    for (Config y = 0; y < h.size(); ++y)
        if (!inX.count(y) && h(y) != y && (y & ~h(y)) == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("pattern catalog shape") {
    const auto& cat = pattern_catalog();
    REQUIRE(cat.size() == 16);
    std::set<std::string> ids;
    for (const Pattern& P : cat) {
        ids.insert(P.id);
        CHECK(P.A.size() <= 4);
        for (Config a : P.A) CHECK(std::count(P.X.begin(), P.X.end(), a) == 1);
        // X is a down set.
        std::set<Config> xs(P.X.begin(), P.X.end());
        for (Config x : P.X)
            for (int i = 1; i <= 3; ++i)
                if (coord(x, i) == 1) CHECK(xs.count(x ^ unit(i)));
        CHECK(P.has_free_slot == P.special.has_value());
    }
    CHECK(ids.size() == 16);

    const Pattern& P1 = pattern_by_id("P1");
    CHECK(P1.arcs == std::vector<std::pair<Config, Config>>{{0, 1}, {1, 0}});
    CHECK(P1.A == std::vector<Config>{0, 1});
    CHECK(pattern_by_id("P0_5").X == std::vector<Config>{0, 1, 2, 4, 5, 6});
    CHECK_THROWS_AS(pattern_by_id("P9"), PreconditionError);
}

TEST_CASE("pattern containment") {
    const Pattern& P2 = pattern_by_id("P2");
    BoolNet f = identity_network(5);
    f.table[0] = 1;
    f.table[1] = 3;
    f.table[3] = 2;
    f.table[2] = 0;
    CHECK(contains_pattern(f, P2));
    // The complement is mapped onto itself, so containment is not proper.
    CHECK(!properly_contains_pattern(f, P2));
    f.table[4] = 0;
    CHECK(properly_contains_pattern(f, P2));

    const Pattern& P01 = pattern_by_id("P0_1");
    BoolNet g = identity_network(5);
    g.table[0] = 2;
    g.table[2] = 0;
    g.table[3] = 1;
    g.table[1] = 4;  // first coordinate of the image is 0
    CHECK(contains_pattern(g, P01));
    g.table[1] = 5;
    CHECK(!contains_pattern(g, P01));
}

TEST_CASE("plug_pattern dispatch") {
    // Single full cycle at n=6: minimum cycle length >= 6, so P0_5.
    BoolNet cyc(6);
    for (Config x = 0; x < cyc.size(); ++x) cyc.table[x] = (x + 1) & full_mask(6);
    auto pr = plug_pattern(cyc);
    CHECK(pr.pattern->id == "P0_5");
    CHECK(properly_contains_pattern(pr.g, *pr.pattern));
    CHECK(canonical_form(pr.g) == canonical_form(cyc));

    // Two 2-cycles and everything else feeding them: P1.
    BoolNet f(5);
    f.table[0] = 1;
    f.table[1] = 0;
    f.table[2] = 3;
    f.table[3] = 2;
    for (Config x = 4; x < f.size(); ++x) f.table[x] = 0;
    CHECK(plug_pattern(f).pattern->id == "P1");

    CHECK_THROWS_AS(plug_pattern(identity_network(5)), PreconditionError);
    CHECK_THROWS_AS(plug_pattern(negation_network(5)), PreconditionError);
    CHECK_THROWS_AS(plug_pattern(random_fixed_point_free(3, {1, 1})), PreconditionError);
    CHECK_THROWS_AS(plug_pattern(n4_exceptional_fixtures()[0].h), PreconditionError);
}

TEST_CASE("good orders") {
    for (int t = 0; t < 20; ++t) {
        BoolNet f = random_network(5, {600, std::uint64_t(t)});
        std::vector<Config> Y;
        for (Config y = 1; y < f.size(); ++y) Y.push_back(y);
        GoodOrder go = good_order(f, Y, std::nullopt);
        CHECK(go.order.size() == Y.size());
        CHECK(is_good_order(f, go));

        // A maximal element outside the image comes last.
        std::set<Config> im;
        for (Config y : Y) im.insert(f(y));
        for (Config y : Y)
            if (!im.count(y)) {
                GoodOrder gm = good_order(f, Y, y);
                CHECK(gm.order.back() == y);
                CHECK(is_good_order(f, gm));
                break;
            }
    }

    BoolNet f = identity_network(3);
    CHECK_THROWS_AS(good_order(f, {1, 2}, Config(1)), PreconditionError);  // 1 = f(1)
    GoodOrder bad{{1, 2, 2}};
    CHECK(!is_good_order(f, bad));
}

TEST_CASE("decreasing construct properties") {
    for (int t = 0; t < 60; ++t) {
        int n = 4 + t % 3;
        BoolNet f = random_network(n, {601, std::uint64_t(t)});
        f.table[1] = 0;  // guarantees the complement of {0} is not mapped onto itself
        BoolNet h = decreasing_construct(f, {0});
        CHECK(canonical_form(h) == canonical_form(f));
        CHECK(x_converging(h, {0}));
        // h agrees with f on the induced subgraph of X.
        CHECK((f(0) == 0 ? h(0) == 0 : h(0) != 0));
    }
}

TEST_CASE("decreasing construct robustness") {
    std::vector<Config> X{0, 1, 2, 3};
    for (int t = 0; t < 10; ++t) {
        BoolNet f = random_network(5, {602, std::uint64_t(t)});
        f.table[4] = 0;
        BoolNet h = decreasing_construct(f, X);
        auto g = RandomSource{603, std::uint64_t(t)}.engine();
        for (int r = 0; r < 20; ++r) {
            // Any relabeling of X keeps the complement converging.
            std::vector<Config> images(h.size());
            std::iota(images.begin(), images.end(), 0);
            for (std::size_t i = X.size(); i > 1; --i)
                std::swap(images[X[i - 1]], images[X[draw_below(g, i)]]);
            CHECK(x_converging(conjugate(h, StatePermutation(5, images)), X));
        }
    }
}

TEST_CASE("decreasing construct error names") {
    CHECK_THROWS_WITH_AS(decreasing_construct(identity_network(4), {0}),
                         doctest::Contains("image-equality"), PreconditionError);
    CHECK_THROWS_WITH_AS(decreasing_construct(random_network(4, {604, 0}), {2}),
                         doctest::Contains("not-down-set"), PreconditionError);
    // X eats almost everything: too few weight-2 configurations remain outside.
    std::vector<Config> big;
    for (Config x = 0; x < 16; ++x)
        if (weight(x) <= 2 && x != 12) big.push_back(x);
    CHECK_THROWS_WITH_AS(decreasing_construct(random_network(4, {604, 1}), big),
                         doctest::Contains("weight-census"), PreconditionError);
}

TEST_CASE("convergence to fixed points") {
    CHECK(converge_to_fixed_points(identity_network(3)) == identity_network(3));
    CHECK_THROWS_AS(converge_to_fixed_points(negation_network(3)), PreconditionError);

    // The rotation with two fixed points at n=2 keeps exactly two attractors.
    BoolNet shift = parse_network("BN 2\n00 00\n10 01\n01 10\n11 11\n");
    BoolNet h = converge_to_fixed_points(shift);
    CHECK(canonical_form(h) == canonical_form(shift));
    CHECK(async_attractors(h).count() == 2);

    for (int t = 0; t < 40; ++t) {
        int n = 5 + t % 2;
        BoolNet f = random_network(n, {605, std::uint64_t(t)});
        f.table[0] = 0;
        std::size_t fp = fixed_points(f).size();
        BoolNet hh = converge_to_fixed_points(f);
        CHECK(canonical_form(hh) == canonical_form(f));
        AttractorSet att = async_attractors(hh);
        CHECK(att.count() == fp);
        ReachReport rep = almost_decreasing_reach(hh, {});
        CHECK(rep.ok);
        CHECK(rep.max_path_arcs <= std::size_t(n) + 1);
    }
}

TEST_CASE("convergence to a small attractor") {
    auto r2 = converge_to_small_attractor(negation_network(2));
    CHECK(r2.h == negation_network(2));
    CHECK(r2.attractor.size() == 4);

    // Involutions at larger n collapse onto the rewired pair {0, e1}.
    BoolNet inv = negation_network(5);
    auto r5 = converge_to_small_attractor(inv);
    CHECK(canonical_form(r5.h) == canonical_form(inv));
    CHECK(r5.attractor == std::vector<Config>{0, 1});

    CHECK_THROWS_AS(converge_to_small_attractor(identity_network(3)), PreconditionError);

    for (int t = 0; t < 30; ++t) {
        int n = 5 + t % 2;
        BoolNet f = random_fixed_point_free(n, {606, std::uint64_t(t)});
        auto r = converge_to_small_attractor(f);
        CHECK(canonical_form(r.h) == canonical_form(f));
        CHECK(r.attractor.size() <= 4);
        AttractorSet att = async_attractors(r.h);
        REQUIRE(att.count() == 1);
        CHECK(att.attractors[0] == r.attractor);
        CHECK(almost_decreasing_reach(r.h, r.attractor).ok);
    }
}

TEST_CASE("exceptional n=4 classes route through the fixtures") {
    for (int k = 0; k < 4; ++k) {
        const auto& fx = n4_exceptional_fixtures()[k];
        auto g = RandomSource{607, std::uint64_t(k)}.engine();
        BoolNet f = conjugate(fx.h, random_state_permutation(4, g));
        CHECK(n4_exceptional_class(f) == k);
        auto r = converge_to_small_attractor(f);
        CHECK(canonical_form(r.h) == canonical_form(f));
        CHECK(r.attractor.size() == 4);
        CHECK(almost_decreasing_reach(r.h, r.attractor).ok);
    }
    CHECK(!n4_exceptional_class(negation_network(4)));
}

TEST_CASE("breaking asynchronous isomorphism") {
    CHECK_THROWS_AS(break_async_iso(constant_network(3, 5)), PreconditionError);
    CHECK_THROWS_AS(break_async_iso(identity_network(3)), PreconditionError);
    CHECK_THROWS_AS(break_async_iso(negation_network(2)), PreconditionError);

    // 3-cycle on 0, e1, e2 with all other configurations fixed.
    BoolNet tri = identity_network(3);
    tri.table[0] = 1;
    tri.table[1] = 2;
    tri.table[2] = 0;
    auto rt = break_async_iso(tri);
    CHECK(canonical_form(rt.h) == canonical_form(tri));
    CHECK(rt.f_value != rt.h_value);
    CHECK(!are_isomorphic_digraphs(asynchronous_graph(tri), asynchronous_graph(rt.h)));

    for (int t = 0; t < 60; ++t) {
        int n = 3 + t % 2;
        BoolNet f = random_network(n, {608, std::uint64_t(t)});
        if (f == identity_network(n)) continue;
        auto r = break_async_iso(f);
        CHECK(canonical_form(r.h) == canonical_form(f));
        auto df = delta_sets(f), dh = delta_sets(r.h);
        if (r.witness_kind == "delta-plus")
            CHECK(df.first.size() != dh.first.size());
        else
            CHECK(df.second.size() != dh.second.size());
        if (n == 3)
            CHECK(!are_isomorphic_digraphs(asynchronous_graph(f), asynchronous_graph(r.h)));
    }
}

TEST_CASE("many attractors packing") {
    auto rid = many_attractors(identity_network(5));
    CHECK(rid.count == 32);
    CHECK(rid.guarantee == 3);

    BoolNet shift = parse_network("BN 2\n00 00\n10 01\n01 10\n11 11\n");
    auto rs = many_attractors(shift);
    CHECK(rs.count == 2);

    for (int t = 0; t < 20; ++t) {
        BoolNet f = random_network(8, {609, std::uint64_t(t)});
        auto r = many_attractors(f);
        CHECK(canonical_form(r.h) == canonical_form(f));
        CHECK(r.guarantee == image_count(f, 2) / 10);
        CHECK(r.count >= r.guarantee);
        std::uint64_t small = 0;
        for (auto& a : async_attractors(r.h).attractors)
            if (a.size() <= 4) ++small;
        CHECK(r.count == small);
    }
}

TEST_CASE("H4 colorings") {
    CHECK_THROWS_AS(h4_coloring(random_network(4, {610, 0})), PreconditionError);
    CHECK_THROWS_AS(h4_coloring(identity_network(4)), PreconditionError);

    // Four 4-cycles: each is colored 0,1,2,3 along the cycle.
    const BoolNet& quad = n4_exceptional_fixtures()[3].h;
    H4Coloring phi = h4_coloring(quad);
    std::vector<int> sizes(4, 0);
    for (Config x = 0; x < quad.size(); ++x) {
        sizes[phi.color[x]]++;
        CHECK(h4_arc(phi.color[x], phi.color[quad(x)]));
    }
    CHECK(sizes == std::vector<int>{4, 4, 4, 4});

    for (int t = 0; t < 30; ++t) {
        int n = 3 + t % 4;
        BoolNet f = random_permutation_network(n, {611, std::uint64_t(t)}, {1});
        H4Coloring c = h4_coloring(f);
        std::vector<Config> cls(4, 0);
        for (Config x = 0; x < f.size(); ++x) {
            cls[c.color[x]]++;
            CHECK(h4_arc(c.color[x], c.color[f(x)]));
        }
        for (int k = 0; k < 4; ++k) CHECK(cls[k] == f.size() / 4);
    }
}

TEST_CASE("strongly connected variants") {
    CHECK(strongly_connected_variant(negation_network(2)) == negation_network(2));
    BoolNet c4(2, {2, 0, 3, 1});
    BoolNet h4v = strongly_connected_variant(c4);
    CHECK(canonical_form(h4v) == canonical_form(c4));
    CHECK_THROWS_AS(strongly_connected_variant(identity_network(3)), PreconditionError);
    CHECK_THROWS_AS(strongly_connected_variant(random_network(4, {612, 9})), PreconditionError);

    for (int t = 0; t < 20; ++t) {
        int n = 3 + t % 2;
        BoolNet f = random_permutation_network(n, {612, std::uint64_t(t)}, {1});
        BoolNet h = strongly_connected_variant(f);
        CHECK(canonical_form(h) == canonical_form(f));

        // All-pairs BFS distance bound dist(x, y) <= d(x, y) + 4.
        StateDigraph A = asynchronous_graph(h);
        for (Config s = 0; s < h.size(); ++s) {
            std::vector<int> distv(h.size(), -1);
            std::vector<Config> queue{s};
            distv[s] = 0;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                Config u = queue[qi];
                A.rows[u].for_each([&](Config v) {
                    if (distv[v] < 0) {
                        distv[v] = distv[u] + 1;
                        queue.push_back(v);
                    }
                });
            }
            for (Config y = 0; y < h.size(); ++y) {
                REQUIRE(distv[y] >= 0);
                CHECK(distv[y] <= dist(s, y) + 4);
            }
        }
    }
}

TEST_CASE("the classic pair and the shipped fixtures") {
    auto [l, r] = async_isomorphic_pair();
    CHECK(canonical_form(l) != canonical_form(r));
    CHECK(are_isomorphic_digraphs(asynchronous_graph(l), asynchronous_graph(r)).has_value());

    REQUIRE(n4_exceptional_fixtures().size() == 4);
    std::set<std::string> reprs;
    for (const auto& fx : n4_exceptional_fixtures()) {
        reprs.insert(canonical_form(fx.h).repr);
        CHECK(fx.attractor.size() == 4);
        CHECK(fixed_points(fx.h).empty());
    }
    CHECK(reprs.size() == 4);
}
