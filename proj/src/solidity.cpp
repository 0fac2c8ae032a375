#include "bn/solidity.hpp"

#include <algorithm>
#include <numeric>

namespace bn {

std::vector<Staple> staples(int n, Config x, Config y) {
    if (dist(x, y) != 1) throw PreconditionError("staples need a hypercube edge");
    std::vector<Staple> out;
    for (int j = 1; j <= n; ++j) {
        if ((x ^ y) == unit(j)) continue;
        // x -- x+e_j -- y+e_j -- y
        int i = 1;
        while (unit(i) != (x ^ y)) ++i;
        out.push_back({{{{x, j}, {x ^ unit(j), i}, {y, j}}}});
    }
    return out;
}

namespace {

int complete_staples(const CubeSubgraph& C, Config x, int i) {
    Config y = x ^ unit(i);
    int count = 0;
    for (int j = 1; j <= C.n; ++j) {
        if (j == i) continue;
        if (C.has(x, j) && C.has(x ^ unit(j), i) && C.has(y, j)) ++count;
    }
    return count;
}

}  // namespace

SolidityReport staple_closure(const CubeSubgraph& G) {
    SolidityReport rep;
    rep.certified_solid_edges = G;
    CubeSubgraph& C = rep.certified_solid_edges;
    const int n = G.n;

    // Current frontier of edges whose addition may complete staples; edges
    // stored with the i-th coordinate cleared.
    std::vector<std::pair<Config, int>> frontier, next, added;
    for (Config x = 0; x < (Config{1} << n); ++x)
        for (int i = 1; i <= n; ++i)
            if (coord(x, i) == 0) frontier.emplace_back(x, i);

    while (!frontier.empty()) {
        added.clear();
        for (auto [x, i] : frontier)
            if (!C.has(x, i) && complete_staples(C, x, i) >= 4) added.emplace_back(x, i);
        if (added.empty()) break;
        ++rep.closure_rounds;
        next.clear();
        for (auto [x, i] : added) {
            C.add(x, i);
            // Only edges sharing a square with a new edge can gain a staple.
            for (int j = 1; j <= n; ++j) {
                if (j == i) continue;
                Config b = x & ~unit(j);
                next.emplace_back(b, i);
                next.emplace_back(b ^ unit(j), i);
                next.emplace_back(b, j);
                next.emplace_back(b ^ unit(i), j);
            }
        }
        frontier.swap(next);
    }
    rep.is_fully_solid = C.is_full();
    return rep;
}

CubeSubgraph exact_solid_closure(const CubeSubgraph& G) {
    const int n = G.n;
    if (n > 3) throw PreconditionError("exact solid closure limited to n <= 3");
    const Config N = Config{1} << n;

    std::vector<std::pair<Config, int>> gedges;
    for (Config x = 0; x < N; ++x)
        for (int i = 1; i <= n; ++i)
            if (coord(x, i) == 0 && G.has(x, i)) gedges.emplace_back(x, i);

    CubeSubgraph out(n);
    for (Config x = 0; x < N; ++x)
        for (int i = 1; i <= n; ++i)
            if (coord(x, i) == 0) out.add(x, i);

    std::vector<Config> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool embedding = true;
        for (auto [x, i] : gedges)
            if (dist(perm[x], perm[x ^ unit(i)]) != 1) {
                embedding = false;
                break;
            }
        if (!embedding) continue;
        for (Config x = 0; x < N; ++x)
            for (int i = 1; i <= n; ++i)
                if (coord(x, i) == 0 && out.has(x, i) && dist(perm[x], perm[x ^ unit(i)]) != 1)
                    out.remove(x, i);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

CubeSubgraph random_cube_subgraph(int n, double p, RandomSource rs) {
    CubeSubgraph G(n);
    auto g = rs.engine();
    const int E = CubeSubgraph::edge_count_full(n);
    for (int e = 0; e < E; ++e) {
        double u = double(g() >> 11) * 0x1.0p-53;
        if (u < p) G.edges.set(e);
    }
    return G;
}

double solidity_experiment(int n, double p, std::uint64_t samples, RandomSource rs) {
    if (n > 14) throw PreconditionError("solidity experiment limited to n <= 14");
    if (p < 0.0 || p > 1.0) throw PreconditionError("probability out of range");
    if (samples == 0) throw PreconditionError("need at least one sample");
    std::uint64_t certified = 0;
    for (std::uint64_t k = 0; k < samples; ++k)
        if (staple_closure(random_cube_subgraph(n, p, rs.substream(k))).is_fully_solid) ++certified;
    return double(certified) / double(samples);
}

bool async_solidity_link(const BoolNet& f) {
    return staple_closure(undirected_async(f)).is_fully_solid;
}

}  // namespace bn
