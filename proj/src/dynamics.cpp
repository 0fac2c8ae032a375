#include "bn/dynamics.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace bn {

StateDigraph synchronous_graph(const BoolNet& f) {
    StateDigraph G(f.n);
    for (Config x = 0; x < f.size(); ++x) G.add_arc(x, f(x));
    return G;
}

StateDigraph asynchronous_graph(const BoolNet& f) {
    StateDigraph G(f.n);
    for (Config x = 0; x < f.size(); ++x) {
        Config diff = x ^ f(x);
        while (diff) {
            Config bit = diff & -diff;
            G.add_arc(x, x ^ bit);
            diff ^= bit;
        }
    }
    return G;
}

CubeSubgraph undirected_async(const BoolNet& f) {
    CubeSubgraph G(f.n);
    for (Config x = 0; x < f.size(); ++x) {
        Config diff = x ^ f(x);
        for (int i = 1; i <= f.n; ++i)
            if ((diff >> (i - 1)) & 1) G.add(x, i);
    }
    return G;
}

// Next set bit of b at position >= from, or -1.
static int next_set(const Bitset& b, int from) {
    if (from >= b.nbits) return -1;
    std::size_t wi = from >> 6;
    std::uint64_t w = b.words[wi] >> (from & 63);
    if (w) return from + __builtin_ctzll(w);
    for (++wi; wi < b.words.size(); ++wi)
        if (b.words[wi]) return int((wi << 6) + __builtin_ctzll(b.words[wi]));
    return -1;
}

// Iterative Tarjan; recursion would overflow the call stack on 2^n vertices.
static std::vector<int> strong_components(const StateDigraph& G, int& comp_count) {
    const int N = int(G.size());
    std::vector<int> idx(N, -1), low(N, 0), comp(N, -1);
    std::vector<bool> on(N, false);
    std::vector<int> stack;
    struct Frame {
        int v;
        int cursor;  // -1: not yet initialized
    };
    std::vector<Frame> frames;
    int counter = 0;
    comp_count = 0;
    for (int r = 0; r < N; ++r) {
        if (idx[r] != -1) continue;
        frames.push_back({r, -1});
        while (!frames.empty()) {
            Frame& fr = frames.back();
            int v = fr.v;
            if (fr.cursor == -1) {
                idx[v] = low[v] = counter++;
                stack.push_back(v);
                on[v] = true;
                fr.cursor = 0;
            }
            int w = next_set(G.rows[v], fr.cursor);
            if (w != -1) {
                fr.cursor = w + 1;
                if (idx[w] == -1)
                    frames.push_back({w, -1});
                else if (on[w])
                    low[v] = std::min(low[v], idx[w]);
                continue;
            }
            if (low[v] == idx[v]) {
                int c = comp_count++;
                int u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on[u] = false;
                    comp[u] = c;
                } while (u != v);
            }
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
    return comp;
}

AttractorSet attractors(const StateDigraph& G) {
    int comp_count = 0;
    std::vector<int> comp = strong_components(G, comp_count);
    std::vector<bool> terminal(comp_count, true);
    for (Config u = 0; u < G.size(); ++u)
        G.rows[u].for_each([&](Config v) {
            if (comp[v] != comp[u]) terminal[comp[u]] = false;
        });
    std::vector<std::vector<Config>> groups(comp_count);
    for (Config u = 0; u < G.size(); ++u)
        if (terminal[comp[u]]) groups[comp[u]].push_back(u);
    AttractorSet out;
    for (auto& g : groups)
        if (!g.empty()) out.attractors.push_back(std::move(g));
    std::sort(out.attractors.begin(), out.attractors.end());
    return out;
}

AttractorSet async_attractors(const BoolNet& f) { return attractors(asynchronous_graph(f)); }

std::vector<Config> fixed_points(const BoolNet& f) {
    std::vector<Config> out;
    for (Config x = 0; x < f.size(); ++x)
        if (f(x) == x) out.push_back(x);
    return out;
}

PeriodicStructure periodic_structure(const BoolNet& f) {
    const Config N = f.size();
    PeriodicStructure ps;
    ps.period.assign(N, 0);
    // color: 0 unvisited, 1 in progress (current walk), 2 done
    std::vector<std::uint8_t> color(N, 0);
    std::vector<Config> walk;
    for (Config s = 0; s < N; ++s) {
        if (color[s]) continue;
        walk.clear();
        Config x = s;
        while (color[x] == 0) {
            color[x] = 1;
            walk.push_back(x);
            x = f(x);
        }
        if (color[x] == 1) {
            // Found a new cycle: everything on the walk from x onward is periodic.
            std::size_t start = 0;
            while (walk[start] != x) ++start;
            int len = int(walk.size() - start);
            ps.cycle_lengths.push_back(len);
            for (std::size_t i = start; i < walk.size(); ++i) ps.period[walk[i]] = len;
        }
        for (Config y : walk) color[y] = 2;
    }
    std::sort(ps.cycle_lengths.begin(), ps.cycle_lengths.end());
    for (Config x = 0; x < N; ++x) {
        if (ps.period[x] == 1) ps.fixed.push_back(x);
        if (ps.period[x] > 0) ps.periodic.push_back(x);
    }
    return ps;
}

std::pair<std::vector<Config>, std::vector<Config>> delta_sets(const BoolNet& f) {
    std::vector<Config> plus, minus;
    for (Config x = 0; x < f.size(); ++x) {
        if (f(x) == complement_of(x, f.n)) plus.push_back(x);
        bool all_in = true;
        for (int i = 1; i <= f.n && all_in; ++i)
            all_in = f.component(x ^ unit(i), i) == coord(x, i);
        if (all_in) minus.push_back(x);
    }
    return {plus, minus};
}

std::uint64_t image_count(const BoolNet& f, int k) {
    if (k < 1) throw PreconditionError("image_count needs k >= 1");
    std::vector<Config> cur = f.table;
    for (int j = 1; j < k; ++j)
        for (auto& y : cur) y = f(y);
    std::vector<bool> seen(f.size(), false);
    std::uint64_t d = 0;
    for (Config y : cur)
        if (!seen[y]) {
            seen[y] = true;
            ++d;
        }
    return d;
}

std::optional<std::pair<Config, Config>> contains_2P1(const BoolNet& f) {
    std::vector<Config> movers;
    for (Config x = 0; x < f.size(); ++x)
        if (f(x) != x) movers.push_back(x);
    for (Config a : movers)
        for (Config b : movers) {
            if (b <= a) continue;
            if (b != f(a) && a != f(b) && f(a) != f(b)) return std::make_pair(a, b);
        }
    return std::nullopt;
}

ReachReport almost_decreasing_reach(const BoolNet& f, const std::vector<Config>& targets) {
    const Config N = f.size();
    const int n = f.n;
    ReachReport rep;
    // Backward BFS on the product of the state space with a one-bit budget:
    // layer 0 = only decreasing arcs remain, layer 1 = one increasing arc
    // still allowed. BFS order makes every witness path arc-minimal.
    // next[layer][x] = successor on the witness path; -1 none, -2 endpoint.
    std::vector<std::array<long, 2>> next(N, {-1, -1});
    std::deque<std::pair<Config, int>> queue;

    auto seed = [&](Config t) {
        if (next[t][0] != -1) return;
        next[t][0] = next[t][1] = -2;
        queue.emplace_back(t, 0);
        queue.emplace_back(t, 1);
    };
    for (Config t : targets) seed(t);
    for (Config x : fixed_points(f)) seed(x);

    while (!queue.empty()) {
        auto [v, layer] = queue.front();
        queue.pop_front();
        for (int i = 1; i <= n; ++i) {
            // Decreasing arc u -> v with u = v + e_i, keeps the layer.
            if (coord(v, i) == 0) {
                Config u = v ^ unit(i);
                if (next[u][layer] == -1 && f.component(u, i) == 0) {
                    next[u][layer] = long(v);
                    queue.emplace_back(u, layer);
                }
            } else if (layer == 0) {
                // Increasing arc u -> v with u = v - e_i, spends the budget.
                Config u = v ^ unit(i);
                if (next[u][1] == -1 && f.component(u, i) == 1) {
                    next[u][1] = long(v) | (std::int64_t(1) << 32);  // successor is in layer 0
                    queue.emplace_back(u, 1);
                }
            }
        }
    }

    rep.ok = true;
    rep.paths.assign(N, {});
    for (Config x = 0; x < N; ++x) {
        if (next[x][1] == -1) {
            rep.ok = false;
            rep.unreached.push_back(x);
            continue;
        }
        if (next[x][1] == -2) continue;
        std::vector<Config>& p = rep.paths[x];
        long v = long(x);
        int layer = 1;
        while (v != -2) {
            p.push_back(Config(v & 0xffffffff));
            long step = next[Config(v & 0xffffffff)][layer];
            if (step == -2) {
                v = -2;
            } else {
                if (step >> 32) layer = 0;
                v = step & 0xffffffffL;
            }
        }
        rep.max_path_arcs = std::max(rep.max_path_arcs, p.size() - 1);
    }
    return rep;
}

std::string to_dot(const StateDigraph& G) { return to_dot(G, AttractorSet{}); }

std::string to_dot(const StateDigraph& G, const AttractorSet& att) {
    std::vector<int> cluster(G.size(), -1);
    for (std::size_t c = 0; c < att.attractors.size(); ++c)
        for (Config v : att.attractors[c]) cluster[v] = int(c);
    std::string out = "digraph dynamics {\n";
    for (Config v = 0; v < G.size(); ++v) {
        out += "  \"" + config_bits(v, G.n) + "\"";
        if (cluster[v] >= 0) out += " [attractor=" + std::to_string(cluster[v]) + "]";
        out += ";\n";
    }
    for (Config u = 0; u < G.size(); ++u)
        G.rows[u].for_each([&](Config v) {
            out += "  \"" + config_bits(u, G.n) + "\" -> \"" + config_bits(v, G.n) + "\";\n";
        });
    out += "}\n";
    return out;
}

}  // namespace bn
