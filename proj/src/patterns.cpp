#include <set>

#include "bn/construct.hpp"
#include "internal.hpp"

namespace bn {

namespace {

// Named low-weight configurations the patterns are drawn on.
constexpr Config k0 = 0;
constexpr Config kE1 = 1, kE2 = 2, kE3 = 4;
constexpr Config kE12 = 3, kE13 = 5, kE23 = 6, kE123 = 7;

Pattern make_pattern(std::string id, std::vector<std::pair<Config, Config>> arcs,
                     std::optional<std::pair<Config, int>> special, std::vector<Config> A) {
    Pattern P;
    P.id = std::move(id);
    P.arcs = std::move(arcs);
    P.special = special;
    P.A = std::move(A);
    P.has_free_slot = special.has_value();
    std::set<Config> xs;
    for (auto [u, v] : P.arcs) {
        xs.insert(u);
        xs.insert(v);
    }
    if (P.special) xs.insert(P.special->first);
    P.X.assign(xs.begin(), xs.end());
    std::sort(P.A.begin(), P.A.end());
    return P;
}

std::vector<Pattern> build_catalog() {
    std::vector<Pattern> out;
    // Closed patterns.
    out.push_back(make_pattern("P1", {{k0, kE1}, {kE1, k0}}, std::nullopt, {k0, kE1}));
    out.push_back(make_pattern("P2", {{k0, kE1}, {kE1, kE12}, {kE12, kE2}, {kE2, k0}},
                               std::nullopt, {k0, kE1, kE2, kE12}));
    out.push_back(make_pattern("P3", {{kE1, k0}, {kE2, k0}, {k0, kE12}, {kE12, kE1}},
                               std::nullopt, {k0, kE1, kE2}));
    out.push_back(make_pattern(
        "P4", {{kE2, k0}, {k0, kE12}, {kE12, kE2}, {kE13, kE1}, {kE1, kE3}, {kE3, kE13}},
        std::nullopt, {k0, kE1, kE2, kE13}));
    out.push_back(make_pattern(
        "P5", {{kE2, k0}, {k0, kE12}, {kE12, kE13}, {kE13, kE1}, {kE1, kE3}, {kE3, k0}},
        std::nullopt, {k0, kE1, kE2, kE13}));
    out.push_back(make_pattern(
        "P6", {{kE2, k0}, {k0, kE12}, {kE12, kE13}, {kE13, kE1}, {kE1, kE3}, {kE3, kE2}},
        std::nullopt, {k0, kE1, kE2, kE13}));
    // 0-open patterns: the special arc constrains g_1(e_1) = 0.
    out.push_back(make_pattern("P0_1", {{k0, kE2}, {kE2, k0}, {kE12, kE1}},
                               std::pair<Config, int>{kE1, 0}, {k0, kE2}));
    out.push_back(make_pattern(
        "P0_2", {{kE13, kE3}, {kE3, kE1}, {kE2, k0}, {k0, kE23}, {kE23, kE2}},
        std::pair<Config, int>{kE1, 0}, {k0, kE2, kE3, kE13}));
    out.push_back(make_pattern(
        "P0_3", {{kE13, kE3}, {kE3, kE1}, {kE2, k0}, {k0, kE23}, {kE23, kE12}, {kE12, kE2}},
        std::pair<Config, int>{kE1, 0}, {k0, kE2, kE3, kE13}));
    out.push_back(make_pattern("P0_4",
                               {{kE13, kE3},
                                {kE3, kE1},
                                {kE2, k0},
                                {k0, kE23},
                                {kE23, kE123},
                                {kE123, kE12},
                                {kE12, kE2}},
                               std::pair<Config, int>{kE1, 0}, {k0, kE2, kE3, kE13}));
    out.push_back(make_pattern(
        "P0_5", {{kE2, k0}, {k0, kE23}, {kE23, kE13}, {kE13, kE3}, {kE3, kE1}},
        std::pair<Config, int>{kE1, 0}, {k0, kE2, kE3, kE13}));
    // 1-open patterns: the special arc constrains g_1(x) = 1.
    out.push_back(make_pattern("P1_1", {{kE1, kE12}, {kE12, kE1}, {kE2, k0}},
                               std::pair<Config, int>{k0, 1}, {kE1, kE12}));
    out.push_back(make_pattern(
        "P1_2", {{kE2, k0}, {k0, kE12}, {kE12, kE2}, {kE13, kE1}, {kE1, kE3}},
        std::pair<Config, int>{kE3, 1}, {k0, kE1, kE2, kE13}));
    out.push_back(make_pattern(
        "P1_3", {{kE2, k0}, {k0, kE12}, {kE12, kE23}, {kE23, kE2}, {kE13, kE1}, {kE1, kE3}},
        std::pair<Config, int>{kE3, 1}, {k0, kE1, kE2, kE13}));
    out.push_back(make_pattern("P1_4",
                               {{kE2, k0},
                                {k0, kE12},
                                {kE12, kE123},
                                {kE123, kE23},
                                {kE23, kE2},
                                {kE13, kE1},
                                {kE1, kE3}},
                               std::pair<Config, int>{kE3, 1}, {k0, kE1, kE2, kE13}));
    out.push_back(make_pattern(
        "P1_5", {{kE2, k0}, {k0, kE12}, {kE12, kE13}, {kE13, kE1}, {kE1, kE3}},
        std::pair<Config, int>{kE3, 1}, {k0, kE1, kE2, kE13}));
    return out;
}

}  // namespace

const std::vector<Pattern>& pattern_catalog() {
    static const std::vector<Pattern> catalog = build_catalog();
    return catalog;
}

const Pattern& pattern_by_id(const std::string& id) {
    for (const Pattern& P : pattern_catalog())
        if (P.id == id) return P;
    throw PreconditionError("unknown pattern id: " + id);
}

bool contains_pattern(const BoolNet& f, const Pattern& P) {
    for (Config x : P.X)
        if (x >= f.size()) return false;
    for (auto [u, v] : P.arcs)
        if (f(u) != v) return false;
    if (P.special && f.component(P.special->first, 1) != P.special->second) return false;
    return true;
}

bool properly_contains_pattern(const BoolNet& f, const Pattern& P) {
    if (!contains_pattern(f, P)) return false;
    const int n = f.n;
    std::vector<char> inX(f.size(), 0);
    for (Config x : P.X) inX[x] = 1;

    // f(X-bar) != X-bar.
    std::set<Config> image;
    std::size_t ybar = 0;
    bool inside = true;
    for (Config y = 0; y < f.size(); ++y) {
        if (inX[y]) continue;
        ++ybar;
        image.insert(f(y));
        if (inX[f(y)]) inside = false;
    }
    if (inside && image.size() == ybar) return false;

    // Weight census of X-bar.
    std::vector<std::uint64_t> per_weight(n + 1, 0);
    for (Config y = 0; y < f.size(); ++y)
        if (!inX[y]) per_weight[weight(y)]++;
    for (int l = 2; l < n; ++l)
        if (per_weight[l] < detail::binomial(n - 1, l - 1) + 1) return false;
    return true;
}

PlugResult plug_pattern(const BoolNet& f) { return plug_pattern(f, 0); }

PlugResult plug_pattern(const BoolNet& f, int variant) {
    const int n = f.n;
    if (!fixed_points(f).empty())
        throw PreconditionError("plug_pattern needs a fixed-point-free network");
    bool involution = true;
    for (Config x = 0; x < f.size() && involution; ++x) involution = f(f(x)) == x;
    if (involution) throw PreconditionError("f^2 = id is out of pattern scope");
    if (n < 4) throw PreconditionError("plug_pattern needs n >= 4");
    if (n == 4 && n4_exceptional_class(f))
        throw PreconditionError("exceptional n=4 class; use the shipped witness");

    auto cycles = detail::cycles_of(f);
    std::size_t ell = cycles[0].size(), L = ell;
    for (auto& c : cycles) {
        ell = std::min(ell, c.size());
        L = std::max(L, c.size());
    }
    const bool perm = is_permutation(f);

    auto first_with_len = [&](std::size_t len) -> const std::vector<Config>& {
        for (auto& c : cycles)
            if (c.size() == len) return c;
        throw PreconditionError("internal: no cycle of required length");
    };
    auto longest_excluding = [&](const std::vector<Config>* skip) -> const std::vector<Config>& {
        const std::vector<Config>* best = nullptr;
        for (auto& c : cycles) {
            if (&c == skip) continue;
            if (!best || c.size() > best->size()) best = &c;
        }
        if (!best) throw PreconditionError("internal: no second cycle");
        return *best;
    };
    // A cycle vertex with a transient preimage, the cycle rotated to start
    // there, plus the minimal such preimage.
    PeriodicStructure ps = periodic_structure(f);
    auto rotate_to_entry = [&](const std::vector<Config>& cyc) -> std::pair<std::vector<Config>, Config> {
        Config best_v = f.size(), best_t = f.size();
        for (Config t = 0; t < f.size(); ++t) {
            if (ps.period[t] != 0) continue;
            Config v = f(t);
            if (std::find(cyc.begin(), cyc.end(), v) == cyc.end()) continue;
            if (v < best_v || (v == best_v && t < best_t)) {
                if (v != best_v) best_t = t;
                best_v = v;
                best_t = std::min(best_t, t);
            }
        }
        if (best_v == f.size()) throw PreconditionError("internal: cycle has no transient preimage");
        std::vector<Config> rot;
        Config x = best_v;
        do {
            rot.push_back(x);
            x = f(x);
        } while (x != best_v);
        return {rot, best_t};
    };

    const Pattern* P = nullptr;
    std::vector<std::pair<Config, Config>> assign;
    std::vector<Config> free_sources;

    auto plug_cycle = [&](const std::vector<Config>& c, std::initializer_list<Config> targets) {
        std::size_t i = 0;
        for (Config t : targets) assign.emplace_back(c[i++], t);
    };
    auto plug_path_with_free = [&](const std::vector<Config>& c, std::initializer_list<Config> targets) {
        std::size_t i = 0;
        for (Config t : targets) assign.emplace_back(c[i++], t);
        free_sources.push_back(c[i]);
    };
    auto use_p05 = [&]() {
        P = &pattern_by_id("P0_5");
        const auto& w = longest_excluding(nullptr);
        plug_path_with_free(w, {kE2, k0, kE23, kE13, kE3, kE1});
    };

    if (ell == 2 && L == 2) {
        P = &pattern_by_id("P1");
        plug_cycle(first_with_len(2), {k0, kE1});
    } else if (ell == 2) {
        P = &pattern_by_id("P0_1");
        const auto& c2 = first_with_len(2);
        plug_cycle(c2, {k0, kE2});
        plug_path_with_free(longest_excluding(&c2), {kE12, kE1});
    } else if (ell == 3 && L >= 4) {
        P = &pattern_by_id("P0_2");
        const auto& c3 = first_with_len(3);
        plug_cycle(c3, {k0, kE23, kE2});
        plug_path_with_free(longest_excluding(&c3), {kE13, kE3, kE1});
    } else if (ell == 3) {
        if (cycles.size() >= 2) {
            P = &pattern_by_id("P4");
            plug_cycle(cycles[0], {k0, kE12, kE2});
            plug_cycle(cycles[1], {kE1, kE3, kE13});
        } else {
            P = &pattern_by_id("P3");
            auto [c, t] = rotate_to_entry(cycles[0]);
            plug_cycle(c, {k0, kE12, kE1});
            assign.emplace_back(t, kE2);
        }
    } else if (ell == 4 && cycles.size() >= 2) {
        if (n == 4) {
            if (!perm) {
                P = &pattern_by_id("P2");
                plug_cycle(first_with_len(4), {k0, kE1, kE12, kE2});
            } else {
                // Non-exceptional n=4 permutation with minimum cycle 4 always
                // has a cycle of length >= 7.
                use_p05();
            }
        } else {
            P = &pattern_by_id("P0_3");
            const auto& c4 = first_with_len(4);
            plug_cycle(c4, {k0, kE23, kE12, kE2});
            plug_path_with_free(longest_excluding(&c4), {kE13, kE3, kE1});
        }
    } else if (ell == 4) {
        P = &pattern_by_id("P2");
        plug_cycle(cycles[0], {k0, kE1, kE12, kE2});
    } else if (ell == 5 && cycles.size() >= 2) {
        if (n == 4) {
            bool has6 = false;
            for (auto& c : cycles) has6 = has6 || c.size() == 6;
            if (has6) {
                P = &pattern_by_id("P6");
                plug_cycle(first_with_len(6), {k0, kE12, kE13, kE1, kE3, kE2});
            } else if (L >= 7) {
                use_p05();
            } else {
                // All cycles of length 5 with transients present; some cycle
                // vertex has a transient preimage.
                P = &pattern_by_id("P5");
                const std::vector<Config>* host = nullptr;
                for (Config t = 0; t < f.size() && !host; ++t)
                    if (ps.period[t] == 0 && ps.period[f(t)] != 0)
                        for (auto& c : cycles)
                            if (std::find(c.begin(), c.end(), f(t)) != c.end()) host = &c;
                auto [c, t] = rotate_to_entry(*host);
                plug_cycle(c, {k0, kE12, kE13, kE1, kE3});
                assign.emplace_back(t, kE2);
            }
        } else {
            P = &pattern_by_id("P0_4");
            const auto& c5 = first_with_len(5);
            plug_cycle(c5, {k0, kE23, kE123, kE12, kE2});
            plug_path_with_free(longest_excluding(&c5), {kE13, kE3, kE1});
        }
    } else if (ell == 5) {
        P = &pattern_by_id("P5");
        auto [c, t] = rotate_to_entry(cycles[0]);
        plug_cycle(c, {k0, kE12, kE13, kE1, kE3});
        assign.emplace_back(t, kE2);
    } else if (ell == 6 && L == 6) {
        P = &pattern_by_id("P6");
        plug_cycle(cycles[0], {k0, kE12, kE13, kE1, kE3, kE2});
    } else {
        use_p05();
    }

    // Free images: first coordinate 0, outside X(P), not already a target.
    if (free_sources.empty() && variant > 0)
        throw PreconditionError("no remaining free-image choice");
    if (!free_sources.empty()) {
        std::set<Config> taken;
        for (auto [src, dst] : assign) taken.insert(dst);
        for (Config x : P->X) taken.insert(x);
        std::vector<Config> choices;
        for (Config t = 0; t < f.size(); ++t)
            if (coord(t, 1) == 0 && !taken.count(t)) choices.push_back(t);
        if (std::size_t(variant) + free_sources.size() > choices.size())
            throw PreconditionError("no remaining free-image choice");
        for (std::size_t i = 0; i < free_sources.size(); ++i)
            assign.emplace_back(free_sources[i], choices[variant + i]);
    }

    StatePermutation pi = detail::order_preserving_extension(n, assign);
    PlugResult res{conjugate(f, pi), P};
    if (!properly_contains_pattern(res.g, *P))
        throw VerificationError("plugged pattern not properly contained");
    return res;
}

}  // namespace bn
