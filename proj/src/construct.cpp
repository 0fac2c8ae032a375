#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "bn/construct.hpp"
#include "bn/iso.hpp"
#include "internal.hpp"

namespace bn {

namespace {

bool is_involution(const BoolNet& f) {
    for (Config x = 0; x < f.size(); ++x)
        if (f(f(x)) != x) return false;
    return true;
}

bool is_constant(const BoolNet& f) {
    for (Config x = 1; x < f.size(); ++x)
        if (f(x) != f(0)) return false;
    return true;
}

std::vector<Config> apply_to_set(const StatePermutation& pi, const std::vector<Config>& S) {
    std::vector<Config> out;
    for (Config x : S) out.push_back(pi(x));
    std::sort(out.begin(), out.end());
    return out;
}

// Singleton attractors are exactly the fixed points, so "one attractor per
// fixed point and nothing else" reduces to an all-sizes-one check.
bool attractors_are_fixed_points(const BoolNet& h, std::size_t fp_count) {
    AttractorSet att = async_attractors(h);
    if (att.count() != fp_count) return false;
    for (auto& a : att.attractors)
        if (a.size() != 1) return false;
    return true;
}

}  // namespace

GoodOrder good_order(const BoolNet& f, const std::vector<Config>& Y, std::optional<Config> maximal) {
    std::vector<char> inY(f.size(), 0);
    for (Config y : Y) {
        if (y >= f.size() || inY[y]) throw PreconditionError("Y must list distinct configurations");
        inY[y] = 1;
    }
    if (maximal) {
        if (*maximal >= f.size() || !inY[*maximal])
            throw PreconditionError("maximal not in Y minus f(Y)");
        for (Config y : Y)
            if (f(y) == *maximal) throw PreconditionError("maximal not in Y minus f(Y)");
    }

    // Union the arcs y -> f(y) that stay in Y; each component is an in-tree
    // rooted at the unique vertex leaving Y, or carries a unique cycle.
    std::vector<Config> parent(f.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Config x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Config y : Y)
        if (inY[f(y)]) parent[find(y)] = find(f(y));

    std::map<Config, std::vector<Config>> members;  // keyed by component representative
    std::vector<Config> sortedY = Y;
    std::sort(sortedY.begin(), sortedY.end());
    for (Config y : sortedY) members[find(y)].push_back(y);

    std::vector<std::vector<Config>> comps;
    for (auto& [rep, mem] : members) comps.push_back(mem);
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    GoodOrder go;
    std::vector<char> placed(f.size(), 0);
    for (auto& comp : comps) {
        Config root = f.size();
        for (Config y : comp)
            if (!inY[f(y)]) root = y;
        if (root == f.size()) {
            // Component carries a cycle; break it at its minimal vertex.
            std::vector<char> seen(f.size(), 0);
            Config x = comp.front();
            while (!seen[x]) {
                seen[x] = 1;
                x = f(x);
            }
            root = x;
            Config c = f(x);
            while (c != x) {
                root = std::min(root, c);
                c = f(c);
            }
        }
        // Emit the root, then repeatedly the minimal vertex whose image is
        // already placed (parent-first topological order of the in-tree).
        std::set<Config> ready{root};
        std::map<Config, std::vector<Config>> children;
        for (Config y : comp)
            if (y != root && inY[f(y)]) children[f(y)].push_back(y);
        while (!ready.empty()) {
            Config v = *ready.begin();
            ready.erase(ready.begin());
            placed[v] = 1;
            go.order.push_back(v);
            for (Config c : children[v]) ready.insert(c);
        }
    }

    if (maximal) {
        go.order.erase(std::find(go.order.begin(), go.order.end(), *maximal));
        go.order.push_back(*maximal);
    }
    if (!is_good_order(f, go)) throw VerificationError("constructed order is not good");
    return go;
}

bool is_good_order(const BoolNet& f, const GoodOrder& go) {
    const auto& ord = go.order;
    std::vector<std::size_t> pos(f.size(), ord.size());
    for (std::size_t i = 0; i < ord.size(); ++i) {
        if (ord[i] >= f.size() || pos[ord[i]] != ord.size()) return false;
        pos[ord[i]] = i;
    }
    auto inY = [&](Config x) { return pos[x] != ord.size(); };
    for (std::size_t i = 0; i < ord.size(); ++i) {
        Config x = ord[i];
        if (!inY(f(x))) continue;
        for (std::size_t j = i + 1; j < ord.size(); ++j) {
            Config y = ord[j];
            if (j > pos[f(x)]) continue;
            if (!inY(f(y)) || pos[f(y)] >= j) return false;
        }
    }
    return true;
}

BoolNet decreasing_construct(const BoolNet& f, const std::vector<Config>& X) {
    const int n = f.n;
    std::vector<char> inX(f.size(), 0);
    if (X.empty()) throw PreconditionError("not-down-set: X must be non-empty");
    for (Config x : X) {
        if (x >= f.size()) throw PreconditionError("not-down-set: X out of range");
        inX[x] = 1;
    }
    for (Config x : X)
        for (int i = 1; i <= n; ++i)
            if (coord(x, i) == 1 && !inX[x ^ unit(i)])
                throw PreconditionError("not-down-set: X is not closed downward");

    std::vector<Config> Y;
    for (Config y = 0; y < f.size(); ++y)
        if (!inX[y]) Y.push_back(y);

    std::set<Config> imageY;
    bool inside = true;
    for (Config y : Y) {
        imageY.insert(f(y));
        if (inX[f(y)]) inside = false;
    }
    if (inside && imageY.size() == Y.size())
        throw PreconditionError("image-equality: f maps the complement of X onto itself");

    std::vector<std::uint64_t> per_weight(n + 1, 0);
    for (Config y : Y) per_weight[weight(y)]++;
    for (int l = 2; l < n; ++l)
        if (per_weight[l] < detail::binomial(n - 1, l - 1) + 1)
            throw PreconditionError("weight-census: too few complement configurations of weight " +
                                    std::to_string(l));

    Config a = f.size();
    for (Config y : Y)
        if (!imageY.count(y) && (a == f.size() || weight_enc_less(y, a))) a = y;
    if (a == f.size()) throw VerificationError("no maximal element available");

    GoodOrder go = good_order(f, Y, a);
    std::vector<Config> slots = Y;
    std::sort(slots.begin(), slots.end(), weight_enc_less);

    StatePermutation pi(n);
    for (std::size_t j = 0; j < Y.size(); ++j) pi.images[go.order[j]] = slots[j];
    BoolNet h = conjugate(f, pi);

    // Kill the strictly increasing images by weight-preserving swaps.
    const std::size_t cap = std::size_t(n) * Y.size() + 1;
    std::size_t rounds = 0;
    for (; rounds < cap; ++rounds) {
        Config x = f.size();
        for (Config z : Y)
            if (lt(z, h(z)) && (x == f.size() || weight_enc_less(z, x))) x = z;
        if (x == f.size()) break;
        const int l = weight(h(x));
        Config y = f.size();
        for (Config z : Y)
            if (weight(z) == l && !leq(x, z)) {
                y = z;
                break;
            }
        if (y == f.size()) throw VerificationError("no weight-preserving swap partner");
        StatePermutation tau = transposition(n, h(x), y);
        h = conjugate(h, tau);
        pi = compose(tau, pi);
    }
    if (rounds == cap) throw VerificationError("swap loop did not terminate");

    for (Config x : X)
        if (inX[f(x)] ? h(x) != f(x) : inX[h(x)])
            throw VerificationError("induced subgraph on X disturbed");
    for (Config y : Y)
        if (h(y) != y && (y & ~h(y)) == 0)
            throw VerificationError("missing decreasing out-arc");
    return h;
}

BoolNet converge_to_fixed_points(const BoolNet& f) {
    const int n = f.n;
    std::vector<Config> fps = fixed_points(f);
    if (fps.empty()) throw PreconditionError("no fixed point");
    if (f == identity_network(n)) return f;

    if (n <= 2) {
        std::vector<Config> images(f.size());
        std::iota(images.begin(), images.end(), 0);
        do {
            BoolNet h = conjugate(f, StatePermutation(n, images));
            if (attractors_are_fixed_points(h, fps.size()) && almost_decreasing_reach(h, {}).ok)
                return h;
        } while (std::next_permutation(images.begin(), images.end()));
        throw VerificationError("exhaustive search failed at small n");
    }

    BoolNet h;
    if (!is_permutation(f)) {
        Config z = fps.front();
        BoolNet g = conjugate(f, transposition(n, z, 0));
        h = decreasing_construct(g, {0});
    } else {
        Config z = fps.front();
        Config u = 0;
        while (f(u) == u) ++u;
        StatePermutation pi = detail::order_preserving_extension(n, {{z, 0}, {u, 1}, {f(u), 2}});
        BoolNet g = conjugate(f, pi);
        h = decreasing_construct(g, {0, 1});
        if (h.component(1, 1) == 1) h = conjugate(h, transposition(n, 0, 1));
    }
    if (!attractors_are_fixed_points(h, fps.size()))
        throw VerificationError("attractors are not the fixed points");
    if (!almost_decreasing_reach(h, {}).ok)
        throw VerificationError("fixed points not reachable almost decreasingly");
    return h;
}

SmallAttractorResult converge_to_small_attractor(const BoolNet& f) {
    const int n = f.n;
    if (!fixed_points(f).empty()) throw PreconditionError("fixed point present");

    auto verified = [&](const BoolNet& h,
                        const std::vector<Config>& A) -> std::optional<SmallAttractorResult> {
        AttractorSet att = async_attractors(h);
        if (att.count() != 1 || att.attractors[0].size() > 4) return std::nullopt;
        if (!A.empty() && att.attractors[0] != A) return std::nullopt;
        if (!almost_decreasing_reach(h, att.attractors[0]).ok) return std::nullopt;
        return SmallAttractorResult{h, att.attractors[0]};
    };

    if (is_involution(f)) {
        if (n == 1) return {f, {0, 1}};
        if (n == 2) return {negation_network(2), {0, 1, 2, 3}};
        // Negation with three rewired 2-cycles; {0, e1} becomes the attractor.
        BoolNet h = negation_network(n);
        const Config one = full_mask(n);
        h.table[0] = 1;
        h.table[1] = 0;
        h.table[one] = 2;
        h.table[2] = one;
        h.table[one ^ 1] = one ^ 2;
        h.table[one ^ 2] = one ^ 1;
        auto res = verified(h, {0, 1});
        if (!res) throw VerificationError("rewired involution witness failed");
        return *res;
    }

    if (n <= 3) {
        std::vector<Config> images(f.size());
        std::iota(images.begin(), images.end(), 0);
        do {
            if (auto res = verified(conjugate(f, StatePermutation(n, images)), {})) return *res;
        } while (std::next_permutation(images.begin(), images.end()));
        throw VerificationError("exhaustive search failed at small n");
    }

    if (n == 4) {
        if (auto k = n4_exceptional_class(f)) {
            const ExceptionalFixture& fx = n4_exceptional_fixtures()[*k];
            return {fx.h, fx.attractor};
        }
    }

    for (int variant = 0; variant < 64; ++variant) {
        PlugResult pr;
        try {
            pr = plug_pattern(f, variant);
        } catch (const PreconditionError&) {
            break;
        }
        const Pattern& P = *pr.pattern;
        BoolNet h = decreasing_construct(pr.g, P.X);
        std::vector<Config> A = P.A;
        if (P.special && h.component(P.special->first, 1) != P.special->second) {
            // The special arc flipped: move to the matching 1-open pattern.
            StatePermutation corr =
                P.id == "P0_1" ? compose(transposition(n, 0, 1), transposition(n, 2, 3))
                               : compose(transposition(n, 6, 3), transposition(n, 1, 4));
            h = conjugate(h, corr);
            A = apply_to_set(corr, A);
        }
        if (auto res = verified(h, A)) return *res;
    }
    throw VerificationError("no pattern-based witness verified");
}

BreakIsoResult break_async_iso(const BoolNet& f) {
    const int n = f.n;
    if (n < 3) throw PreconditionError("out of theorem scope: n < 3");
    if (is_constant(f)) throw PreconditionError("no distinguishable twin exists: constant network");
    if (f == identity_network(n))
        throw PreconditionError("no distinguishable twin exists: identity network");

    const Config one = full_mask(n);
    auto dplus = [](const BoolNet& g) { return delta_sets(g).first.size(); };
    auto dminus = [](const BoolNet& g) { return delta_sets(g).second.size(); };
    const std::size_t fplus = dplus(f), fminus = dminus(f);

    auto finish = [&](const std::vector<BoolNet>& cands,
                      const std::string& label) -> std::optional<BreakIsoResult> {
        for (const BoolNet& h : cands) {
            std::size_t v = dplus(h);
            if (v != fplus) return BreakIsoResult{h, "delta-plus", label, fplus, v};
        }
        return std::nullopt;
    };

    if (auto ab = contains_2P1(f)) {
        auto [a, b] = *ab;
        StatePermutation pi = detail::order_preserving_extension(
            n, {{a, 0}, {b, 1}, {f(a), one}, {f(b), one ^ 1}});
        BoolNet h1 = conjugate(f, pi);
        BoolNet h2 = conjugate(h1, transposition(n, 1, one));
        BoolNet h3 = conjugate(h1, transposition(n, one, one ^ 1));
        if (auto res = finish({h1, h2, h3}, "2P1")) return *res;
    } else {
        PeriodicStructure ps = periodic_structure(f);
        if (ps.periodic.size() >= 2) {
            // Pick a non-fixed a with periodic image, on a long cycle if any.
            Config a = f.size();
            for (Config x = 0; x < f.size() && a == f.size(); ++x)
                if (ps.period[x] >= 2) a = x;
            if (a == f.size())
                for (Config x = 0; x < f.size() && a == f.size(); ++x)
                    if (f(x) != x && ps.period[f(x)] != 0) a = x;
            const Config abar = complement_of(a, n);
            BoolNet g = conjugate(f, transposition(n, abar, f(a)));
            PeriodicStructure psg = periodic_structure(g);
            int maxlen = 1;
            for (int l : psg.cycle_lengths) maxlen = std::max(maxlen, l);

            std::vector<BoolNet> cands;
            if (maxlen == 1) {
                Config b = f.size();
                for (Config x : psg.fixed)
                    if (x != abar) {
                        b = x;
                        break;
                    }
                bool to_a = false, to_abar = false, stray = false;
                for (Config x = 0; x < g.size(); ++x) {
                    if (psg.period[x] != 0 || x == a) continue;
                    (g(x) == a ? to_a : g(x) == abar ? to_abar : stray) = true;
                }
                if (b != f.size() && !stray && !(to_a && to_abar)) {
                    Config pivot = to_abar ? a : abar;
                    cands.push_back(conjugate(g, transposition(n, pivot, b)));
                }
            } else if (maxlen == 2 && g(a) == abar && g(abar) == a) {
                bool to_a = false, to_abar = false, stray = false;
                for (Config x = 0; x < g.size(); ++x) {
                    if (psg.period[x] != 0) continue;
                    (g(x) == a ? to_a : g(x) == abar ? to_abar : stray) = true;
                }
                if (!stray && !(to_a && to_abar)) {
                    BoolNet g2 = to_abar ? conjugate(g, transposition(n, a, abar)) : g;
                    Config b = 0;
                    while (b == a || b == abar) ++b;
                    cands.push_back(conjugate(g2, transposition(n, abar, b)));
                    cands.push_back(g2);
                }
            } else if (maxlen == 3 && is_permutation(g) && psg.period[a] == 3 &&
                       psg.period[abar] == 3) {
                Config w = g(abar) == a ? g(a) : g(abar);
                if (psg.period[w] == 3) {
                    Config c = f.size();
                    for (Config x : psg.fixed)
                        if (x != complement_of(w, n)) {
                            c = x;
                            break;
                        }
                    if (c != f.size()) cands.push_back(conjugate(g, transposition(n, abar, c)));
                }
            }
            cands.push_back(g);
            if (auto res = finish(cands, "two-periodic")) return *res;
        } else {
            // Unique periodic configuration: forced star shape b <- a <- rest.
            Config b = ps.periodic.front();
            Config a = f.size();
            bool shape = f(b) == b;
            for (Config x = 0; x < f.size() && shape; ++x) {
                if (x == b) continue;
                if (f(x) == b) {
                    if (a != f.size()) shape = false;
                    a = x;
                }
            }
            if (shape && a != f.size()) {
                for (Config x = 0; x < f.size() && shape; ++x)
                    if (x != a && x != b && f(x) != a) shape = false;
            } else {
                shape = false;
            }
            if (shape) {
                BoolNet h1 = conjugate(f, detail::order_preserving_extension(n, {{a, 0}, {b, one}}));
                BoolNet h2 = conjugate(f, detail::order_preserving_extension(n, {{a, 0}, {b, 3}}));
                for (const BoolNet& h : {h1, h2}) {
                    std::size_t v = dminus(h);
                    if (v != fminus)
                        return BreakIsoResult{h, "delta-minus", "unique-periodic", fminus, v};
                }
            }
        }
    }

    // Defensive fallback: search small conjugations around the moved part.
    std::vector<Config> pool;
    auto push = [&](Config x) {
        if (x < f.size() && std::find(pool.begin(), pool.end(), x) == pool.end() &&
            pool.size() < 20)
            pool.push_back(x);
    };
    for (Config x = 0; x < f.size(); ++x)
        if (f(x) != x) {
            push(x);
            push(f(x));
            push(complement_of(x, n));
        }
    for (Config x : {Config(0), Config(1), Config(2), Config(3), one, Config(one ^ 1)}) push(x);
    std::size_t tried = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i + 1; j < pool.size() && tried < 5000; ++j, ++tried) {
            BoolNet h = conjugate(f, transposition(n, pool[i], pool[j]));
            std::size_t p = dplus(h), m = dminus(h);
            if (p != fplus) return BreakIsoResult{h, "delta-plus", "fallback", fplus, p};
            if (m != fminus) return BreakIsoResult{h, "delta-minus", "fallback", fminus, m};
        }
    throw VerificationError("no degree-census witness found");
}

ManyAttractorsResult many_attractors(const BoolNet& f) {
    const int n = f.n;
    const std::uint64_t d = image_count(f, 2);
    const std::uint64_t guarantee = d / 10;

    auto small_count = [](const BoolNet& h) {
        std::uint64_t c = 0;
        for (auto& a : async_attractors(h).attractors)
            if (a.size() <= 4) ++c;
        return c;
    };

    if (n < 3) {
        std::uint64_t c = small_count(f);
        if (c < guarantee) throw VerificationError("attractor packing fell short");
        return {f, c, guarantee};
    }

    PeriodicStructure ps = periodic_structure(f);
    std::vector<Config> A = ps.fixed;
    std::vector<Config> B;
    for (Config x = 0; x < f.size(); ++x)
        if (ps.period[x] == 2 && x < f(x)) B.push_back(x);

    // Greedy vertex-disjoint length-2 paths inside the image of f^2.
    std::vector<Config> minpre(f.size(), f.size());
    for (Config u = 0; u < f.size(); ++u)
        if (minpre[f(f(u))] == f.size()) minpre[f(f(u))] = u;
    std::set<Config> X0;
    for (Config x = 0; x < f.size(); ++x)
        if (minpre[x] != f.size() && ps.period[x] != 1 && ps.period[x] != 2) X0.insert(x);
    std::vector<std::array<Config, 3>> paths;
    while (!X0.empty()) {
        Config x = *X0.begin();
        Config xt = minpre[x];
        paths.push_back({xt, f(xt), x});
        for (Config z : {xt, f(xt), x, f(x), f(f(x))}) X0.erase(z);
    }

    const std::uint64_t cap = Config{1} << (n - 3);
    std::vector<std::pair<Config, Config>> assign;
    std::uint64_t units = 0;
    auto anchor = [&]() { return Config(units * 8); };
    for (Config a : A) {
        if (units >= cap) break;
        assign.emplace_back(a, anchor());
        ++units;
    }
    for (Config b : B) {
        if (units >= cap) break;
        assign.emplace_back(b, anchor());
        assign.emplace_back(f(b), anchor() + 1);
        ++units;
    }
    for (std::size_t i = 0; i + 1 < paths.size(); i += 2) {
        if (units >= cap) break;
        auto [x1, y1, z1] = paths[i];
        auto [x2, y2, z2] = paths[i + 1];
        assign.emplace_back(x1, anchor() + 2);
        assign.emplace_back(y1, anchor());
        assign.emplace_back(z1, anchor() + 3);
        assign.emplace_back(x2, anchor() + 5);
        assign.emplace_back(y2, anchor() + 1);
        assign.emplace_back(z2, anchor() + 4);
        ++units;
    }

    BoolNet h = conjugate(f, detail::order_preserving_extension(n, assign));
    std::uint64_t c = small_count(h);
    if (c < guarantee) throw VerificationError("attractor packing fell short");
    return {h, c, guarantee};
}

H4Coloring h4_coloring(const BoolNet& f) {
    const int n = f.n;
    if (!is_permutation(f)) throw PreconditionError("not a permutation");
    if (!fixed_points(f).empty()) throw PreconditionError("fixed point present");
    if (n < 2) throw PreconditionError("need n >= 2 for four balanced classes");

    auto cycles = detail::cycles_of(f);
    std::vector<std::vector<std::size_t>> pool(4);  // cycle indices by length mod 4
    for (std::size_t i = 0; i < cycles.size(); ++i) pool[cycles[i].size() % 4].push_back(i);
    std::vector<std::size_t> used(4, 0);
    auto avail = [&](int t) { return pool[t].size() - used[t]; };
    auto take = [&](int t) { return pool[t][used[t]++]; };

    H4Coloring phi;
    phi.color.assign(f.size(), 0);
    auto paint = [&](std::size_t ci, int type, int c) {
        const auto& cyc = cycles[ci];
        const std::size_t l = cyc.size();
        const std::size_t prefix = type == 0 ? l : l - (type == 1 ? 5 : type == 3 ? 3 : 2);
        for (std::size_t i = 0; i < prefix; ++i) phi.color[cyc[i]] = int((c + i) % 4);
        static const std::vector<int> tail1{0, 2, 0, 1, 3}, tail3{1, 2, 3}, tail2{0, 2};
        const std::vector<int>& tail = type == 1 ? tail1 : type == 3 ? tail3 : tail2;
        if (type != 0)
            for (std::size_t i = 0; i < tail.size(); ++i)
                phi.color[cyc[prefix + i]] = (c + tail[i]) % 4;
    };

    while (avail(0) + avail(1) + avail(2) + avail(3) > 0) {
        if (avail(0) >= 1) {
            paint(take(0), 0, 0);
        } else if (avail(1) >= 4) {
            for (int c = 0; c < 4; ++c) paint(take(1), 1, c);
        } else if (avail(3) >= 4) {
            for (int c = 0; c < 4; ++c) paint(take(3), 3, c);
        } else if (avail(2) >= 2) {
            paint(take(2), 2, 0);
            paint(take(2), 2, 1);
        } else if (avail(1) >= 1 && avail(3) >= 1) {
            paint(take(1), 1, 0);
            paint(take(3), 3, 0);
        } else if (avail(1) >= 2 && avail(2) >= 1) {
            paint(take(1), 1, 0);
            paint(take(1), 1, 2);
            paint(take(2), 2, 1);
        } else if (avail(3) >= 2 && avail(2) >= 1) {
            paint(take(3), 3, 0);
            paint(take(3), 3, 2);
            paint(take(2), 2, 0);
        } else {
            throw VerificationError("no colorable cycle combination left");
        }
    }

    std::vector<std::size_t> sizes(4, 0);
    for (Config x = 0; x < f.size(); ++x) {
        sizes[phi.color[x]]++;
        if (!h4_arc(phi.color[x], phi.color[f(x)]))
            throw VerificationError("invalid arc in coloring");
    }
    for (int c = 0; c < 4; ++c)
        if (sizes[c] != f.size() / 4) throw VerificationError("coloring is not balanced");
    return phi;
}

BoolNet strongly_connected_variant(const BoolNet& f) {
    const int n = f.n;
    if (!is_permutation(f) || !fixed_points(f).empty())
        throw PreconditionError("not a derangement");

    BoolNet h;
    if (n == 1) {
        h = f;
    } else if (n == 2) {
        h = is_involution(f) ? negation_network(2) : BoolNet(2, {2, 0, 3, 1});
    } else {
        H4Coloring phi = h4_coloring(f);
        // Quadrant of each color class, encoded in the two low bits.
        static const Config quad_low[4] = {0, 1, 3, 2};
        const Config T = Config{1} << (n - 2);
        std::vector<Config> tail(f.size(), T);
        std::vector<std::set<Config>> free_tails(4);
        for (int c = 0; c < 4; ++c)
            for (Config t = 0; t < T; ++t) free_tails[c].insert(t);

        // Fresh tails for the color-0 vertices in orbit order; each image gets
        // the complemented tail so every coordinate beyond the quadrant flips.
        Config next = 0;
        for (const auto& cyc : detail::cycles_of(f))
            for (Config x : cyc) {
                if (phi.color[x] != 0) continue;
                tail[x] = next;
                free_tails[0].erase(next);
                tail[f(x)] = (T - 1) ^ next;
                free_tails[phi.color[f(x)]].erase((T - 1) ^ next);
                ++next;
            }
        for (Config x = 0; x < f.size(); ++x) {
            if (tail[x] != T) continue;
            auto& pool = free_tails[phi.color[x]];
            tail[x] = *pool.begin();
            pool.erase(pool.begin());
        }

        std::vector<Config> images(f.size());
        for (Config x = 0; x < f.size(); ++x)
            images[x] = quad_low[phi.color[x]] | (tail[x] << 2);
        h = conjugate(f, StatePermutation(n, std::move(images)));
    }

    // Strong connectivity: forward and backward reach from 0 in A(h).
    StateDigraph A = asynchronous_graph(h);
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<char> seen(h.size(), 0);
        std::vector<Config> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            Config u = stack.back();
            stack.pop_back();
            for (Config v = 0; v < h.size(); ++v) {
                bool arc = dir == 0 ? A.has_arc(u, v) : A.has_arc(v, u);
                if (arc && !seen[v]) {
                    seen[v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
            }
        }
        if (reached != h.size()) throw VerificationError("asynchronous graph not strongly connected");
    }
    return h;
}

}  // namespace bn
