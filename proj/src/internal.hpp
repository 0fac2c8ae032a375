#ifndef BN_INTERNAL_HPP
#define BN_INTERNAL_HPP

#include <algorithm>

#include "bn/dynamics.hpp"

namespace bn::detail {

// Limit cycles as vertex sequences following f, each starting at its minimal
// vertex, listed by that vertex ascending.
inline std::vector<std::vector<Config>> cycles_of(const BoolNet& f) {
    PeriodicStructure ps = periodic_structure(f);
    std::vector<std::vector<Config>> out;
    std::vector<bool> done(f.size(), false);
    for (Config s : ps.periodic) {
        if (done[s]) continue;
        std::vector<Config> cyc;
        Config x = s;
        do {
            done[x] = true;
            cyc.push_back(x);
            x = f(x);
        } while (x != s);
        out.push_back(std::move(cyc));
    }
    return out;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int j = 1; j <= k; ++j) r = r * std::uint64_t(n - k + j) / std::uint64_t(j);
    return r;
}

// Permutation from a partial assignment, completed by mapping the unassigned
// sources to the unassigned targets in ascending order.
inline StatePermutation order_preserving_extension(
    int n, const std::vector<std::pair<Config, Config>>& assigned) {
    const Config N = Config{1} << n;
    std::vector<Config> images(N, N);
    std::vector<bool> used(N, false);
    for (auto [src, dst] : assigned) {
        if (images[src] != N || used[dst])
            throw PreconditionError("conflicting partial assignment");
        images[src] = dst;
        used[dst] = true;
    }
    Config next = 0;
    for (Config x = 0; x < N; ++x) {
        if (images[x] != N) continue;
        while (used[next]) ++next;
        images[x] = next;
        used[next] = true;
    }
    return StatePermutation(n, std::move(images));
}

}  // namespace bn::detail

#endif
