// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <unordered_set>

#include "bn/construct.hpp"
#include "bn/iso.hpp"
#include "bn/solidity.hpp"

using namespace bn;

namespace {

constexpr std::uint64_t kSeed = 20240824;

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    try {
        body();
        std::printf("criterion %2d (%s): pass\n", number, title.c_str());
    } catch (const std::exception& e) {
        std::printf("criterion %2d (%s): FAIL - %s\n", number, title.c_str(), e.what());
        ++failures;
    }
    std::fflush(stdout);
}

void require(bool ok, const std::string& why) {
    if (!ok) throw VerificationError(why);
}

BoolNet random_with_fp(int n, RandomSource rs, bool want_fp) {
    for (std::uint64_t k = 0;; ++k) {
        BoolNet f = random_network(n, rs.substream(k));
        if (fixed_points(f).empty() != want_fp) return f;
    }
}

// All fixed-point-free networks of F(n), one representative per canonical
// class; n <= 3.
std::vector<BoolNet> fp_free_classes(int n) {
    const Config N = Config{1} << n;
    std::vector<BoolNet> reps;
    std::unordered_set<std::string> seen;
    BoolNet f(n);
    std::function<void(Config)> walk = [&](Config x) {
        if (x == N) {
            std::string repr = canonical_form(f).repr;
            if (seen.insert(std::move(repr)).second) reps.push_back(f);
            return;
        }
        for (Config v = 0; v < N; ++v) {
            if (v == x) continue;
            f.table[x] = v;
            walk(x + 1);
        }
    };
    walk(0);
    return reps;
}

void check_small_attractor(const BoolNet& f) {
    SmallAttractorResult r = converge_to_small_attractor(f);
    require(canonical_form(r.h) == canonical_form(f), "witness not isomorphic");
    AttractorSet att = async_attractors(r.h);
    require(att.count() == 1, "attractor not unique");
    require(att.attractors[0].size() <= 4, "attractor too large");
    require(att.attractors[0] == r.attractor, "reported attractor mismatch");
    require(almost_decreasing_reach(r.h, r.attractor).ok, "attractor not reachable");
}

std::vector<std::vector<int>> all_pairs_distances(const StateDigraph& G) {
    const Config N = G.size();
    std::vector<std::vector<int>> dist(N);
    for (Config s = 0; s < N; ++s) {
        std::vector<int>& d = dist[s];
        d.assign(N, -1);
        d[s] = 0;
        std::vector<Config> frontier{s};
        while (!frontier.empty()) {
            std::vector<Config> next;
            for (Config u : frontier)
                G.rows[u].for_each([&](Config v) {
                    if (d[v] < 0) {
                        d[v] = d[u] + 1;
                        next.push_back(v);
                    }
                });
            frontier = std::move(next);
        }
    }
    return dist;
}

}  // namespace

int main() {
    criterion(1, "attractor count lower bound, exhaustive n=2", [] {
        for (Config t0 = 0; t0 < 4; ++t0)
            for (Config t1 = 0; t1 < 4; ++t1)
                for (Config t2 = 0; t2 < 4; ++t2)
                    for (Config t3 = 0; t3 < 4; ++t3) {
                        BoolNet f(2, {t0, t1, t2, t3});
                        std::size_t fp = fixed_points(f).size();
                        require(async_attractors(f).count() >= std::max<std::size_t>(1, fp),
                                "bound violated");
                    }
    });

    criterion(2, "asynchronous graph reconstruction", [] {
        RandomSource rs{kSeed, 2};
        std::uint64_t k = 0;
        for (int n = 4; n <= 8; ++n)
            for (int s = 0; s < 100; ++s, ++k) {
                RandomSource sub = rs.substream(k);
                BoolNet f = random_network(n, sub.substream(0));
                StateDigraph A = asynchronous_graph(f);
                require(reconstruct_network(A) == f, "reconstruction mismatch");

                auto g = sub.substream(1).engine();
                HyperIsometry iso = random_isometry(n, g);
                StateDigraph relabeled(n);
                for (Config x = 0; x < A.size(); ++x)
                    A.rows[x].for_each(
                        [&](Config y) { relabeled.add_arc(iso.apply(x), iso.apply(y)); });
                BoolNet back = reconstruct_network(relabeled);
                require(canonical_form(back) == canonical_form(f),
                        "relabeled reconstruction not isomorphic");
            }
    });

    criterion(3, "isomorphic asynchronous graphs, distinct networks", [] {
        auto [f, h] = async_isomorphic_pair();
        require(are_isomorphic_digraphs(asynchronous_graph(f), asynchronous_graph(h)).has_value(),
                "asynchronous graphs not isomorphic");
        require(canonical_form(f) != canonical_form(h), "networks isomorphic");
    });

    criterion(4, "convergence to fixed points", [] {
        RandomSource rs{kSeed, 4};
        std::uint64_t k = 0;
        for (int n = 5; n <= 8; ++n)
            for (int s = 0; s < 125; ++s, ++k) {
                BoolNet f = random_with_fp(n, rs.substream(k), true);
                BoolNet h = converge_to_fixed_points(f);
                require(canonical_form(h) == canonical_form(f), "witness not isomorphic");
                AttractorSet att = async_attractors(h);
                require(att.count() == fixed_points(f).size(), "attractor count != fp");
                for (auto& a : att.attractors)
                    require(a.size() == 1, "non-singleton attractor");
                ReachReport reach = almost_decreasing_reach(h, {});
                require(reach.ok, "fixed points not reachable");
                require(reach.max_path_arcs <= std::size_t(n) + 1, "witness path too long");
            }
    });

    criterion(5, "unique small attractor, with tightness", [] {
        RandomSource rs{kSeed, 5};
        std::uint64_t k = 0;
        for (int n = 5; n <= 8; ++n)
            for (int s = 0; s < 125; ++s, ++k)
                check_small_attractor(random_with_fp(n, rs.substream(k), false));
        for (int n = 2; n <= 3; ++n)
            for (const BoolNet& f : fp_free_classes(n)) check_small_attractor(f);
        for (const ExceptionalFixture& fx : n4_exceptional_fixtures())
            check_small_attractor(fx.h);

        std::uint64_t j = 0;
        for (int n = 3; n <= 7; ++n)
            for (int s = 0; s < 20; ++s, ++j) {
                BoolNet f = random_permutation_network(n, rs.substream(1000 + j), {1, 2});
                for (auto& a : async_attractors(f).attractors)
                    require(a.size() >= 4, "attractor below tight bound");
            }
    });

    criterion(6, "degree-census witness against graph isomorphism", [] {
        RandomSource rs{kSeed, 6};
        std::uint64_t k = 0;
        for (int n = 3; n <= 4; ++n)
            for (int s = 0; s < 250; ++s, ++k) {
                BoolNet f = random_network(n, rs.substream(k));
                bool constant = true, ident = true;
                for (Config x = 0; x < f.size(); ++x) {
                    constant = constant && f(x) == f(0);
                    ident = ident && f(x) == x;
                }
                if (constant || ident) {
                    --s;
                    continue;
                }
                BreakIsoResult r = break_async_iso(f);
                require(canonical_form(r.h) == canonical_form(f), "witness not isomorphic");
                auto df = delta_sets(f), dh = delta_sets(r.h);
                std::size_t fv = r.witness_kind == "delta-plus" ? df.first.size() : df.second.size();
                std::size_t hv = r.witness_kind == "delta-plus" ? dh.first.size() : dh.second.size();
                require(fv != hv && fv == r.f_value && hv == r.h_value, "census witness invalid");
                if (n == 3)
                    require(!are_isomorphic_digraphs(asynchronous_graph(f),
                                                     asynchronous_graph(r.h))
                                 .has_value(),
                            "asynchronous graphs still isomorphic");
            }
    });

    criterion(7, "many small attractors at n=10", [] {
        RandomSource rs{kSeed, 7};
        const double target = 0.046 * 1024;
        int hits = 0;
        for (std::uint64_t k = 0; k < 100; ++k) {
            BoolNet f = random_network(10, rs.substream(k));
            ManyAttractorsResult r = many_attractors(f);
            require(canonical_form(r.h) == canonical_form(f), "witness not isomorphic");
            require(r.guarantee == image_count(f, 2) / 10, "reported guarantee wrong");
            std::uint64_t small = 0;
            for (auto& a : async_attractors(r.h).attractors)
                if (a.size() <= 4) ++small;
            require(small == r.count && small >= r.guarantee, "guarantee missed");
            if (double(small) >= target) ++hits;
        }
        std::printf("    [n=10 rate: %d/100 samples reached %.0f small attractors]\n", hits,
                    target);
        require(hits >= 95, "rate below 0.95");
    });

    criterion(8, "mean squared-image size at n=14", [] {
        RandomSource rs{kSeed, 8};
        double total = 0;
        for (std::uint64_t k = 0; k < 200; ++k) {
            BoolNet f = random_network(14, rs.substream(k));
            total += double(image_count(f, 2)) / double(f.size());
        }
        double mean = total / 200;
        std::printf("    [mean fraction: %.4f]\n", mean);
        require(mean >= 0.46 && mean <= 0.48, "mean outside [0.46, 0.48]");
    });

    criterion(9, "solidity rate growth at p=0.75", [] {
        RandomSource rs{kSeed, 9};
        double prev = 0;
        double last = 0;
        for (int n : {7, 9, 11}) {
            RandomSource sub = rs.substream(n);
            std::uint64_t certified = 0;
            for (std::uint64_t k = 0; k < 200; ++k) {
                bool low =
                    staple_closure(random_cube_subgraph(n, 0.72, sub.substream(k))).is_fully_solid;
                bool high =
                    staple_closure(random_cube_subgraph(n, 0.75, sub.substream(k))).is_fully_solid;
                require(!low || high, "monotonicity under common draws violated");
                if (high) ++certified;
            }
            double frac = double(certified) / 200;
            std::printf("    [n=%d certified fraction: %.3f]\n", n, frac);
            require(frac >= prev, "certified fraction decreased");
            prev = frac;
            last = frac;
        }
        char msg[80];
        std::snprintf(msg, sizeof msg, "fraction %.3f below 0.99 at n=11", last);
        require(last >= 0.99, msg);
    });

    criterion(10, "strongly connected variant with short detours", [] {
        RandomSource rs{kSeed, 10};
        std::uint64_t k = 0;
        for (int n = 3; n <= 6; ++n)
            for (int s = 0; s < 50; ++s, ++k) {
                BoolNet f = random_permutation_network(n, rs.substream(k), {1});
                BoolNet h = strongly_connected_variant(f);
                require(canonical_form(h) == canonical_form(f), "witness not isomorphic");
                auto d = all_pairs_distances(asynchronous_graph(h));
                for (Config x = 0; x < h.size(); ++x)
                    for (Config y = 0; y < h.size(); ++y) {
                        require(d[x][y] >= 0, "not strongly connected");
                        require(d[x][y] <= dist(x, y) + 4, "detour bound violated");
                    }
            }
    });

    criterion(11, "balanced four-class colorings of permutations", [] {
        RandomSource rs{kSeed, 11};
        std::uint64_t k = 0;
        for (int n = 4; n <= 8; ++n)
            for (int s = 0; s < 40; ++s, ++k) {
                BoolNet f = random_permutation_network(n, rs.substream(k), {1});
                H4Coloring col = h4_coloring(f);
                std::array<std::uint64_t, 4> census{};
                for (Config x = 0; x < f.size(); ++x) {
                    require(h4_arc(col.color[x], col.color[f(x)]), "invalid arc");
                    ++census[col.color[x]];
                }
                for (std::uint64_t c : census)
                    require(c == f.size() / 4, "coloring not balanced");
            }
    });

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
