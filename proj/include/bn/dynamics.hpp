#ifndef BN_DYNAMICS_HPP
#define BN_DYNAMICS_HPP

#include <optional>
#include <utility>

#include "bn/core.hpp"

namespace bn {

// Fixed-width bitset backing adjacency rows and vertex sets.
struct Bitset {
    int nbits = 0;
    std::vector<std::uint64_t> words;

    Bitset() = default;
    explicit Bitset(int n) : nbits(n), words((n + 63) / 64, 0) {}

    bool test(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool any() const {
        for (auto w : words)
            if (w) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (auto w : words) c += __builtin_popcountll(w);
        return c;
    }
    bool operator==(const Bitset& o) const = default;

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words.size(); ++wi)
            for (std::uint64_t w = words[wi]; w; w &= w - 1)
                fn(Config((wi << 6) + __builtin_ctzll(w)));
    }
};

// Digraph on vertex set {0,1}^n with bit-row adjacency; also used for small
// generic digraphs (vertex count 2^n).
struct StateDigraph {
    int n = 0;
    std::vector<Bitset> rows;

    StateDigraph() = default;
    explicit StateDigraph(int n_) : n(n_), rows(std::size_t(1) << n_, Bitset(1 << n_)) {}

    Config size() const { return Config{1} << n; }
    bool has_arc(Config u, Config v) const { return rows[u].test(v); }
    void add_arc(Config u, Config v) { rows[u].set(v); }
    std::size_t arc_count() const {
        std::size_t c = 0;
        for (auto& r : rows) c += r.count();
        return c;
    }
    bool operator==(const StateDigraph& o) const = default;
};

// Spanning subgraph of the hypercube Q_n as an edge bitset; the edge
// {x, x+e_i} (with x_i = 0) has index (i-1)*2^{n-1} + rank of x among the
// configurations with x_i = 0 (x with bit i-1 squeezed out).
struct CubeSubgraph {
    int n = 0;
    Bitset edges;

    CubeSubgraph() = default;
    explicit CubeSubgraph(int n_) : n(n_), edges(n_ * (1 << (n_ - 1))) {}

    static int edge_count_full(int n) { return n * (1 << (n - 1)); }
    // x may be either endpoint; i is the direction (1-based).
    int edge_index(Config x, int i) const {
        Config lo = x & ~unit(i);
        Config low = lo & (unit(i) - 1);
        Config high = (lo >> i) << (i - 1);
        return (i - 1) * (1 << (n - 1)) + int(low | high);
    }
    bool has(Config x, int i) const { return edges.test(edge_index(x, i)); }
    void add(Config x, int i) { edges.set(edge_index(x, i)); }
    void remove(Config x, int i) { edges.reset(edge_index(x, i)); }
    int edge_count() const { return edges.count(); }
    bool is_full() const { return edge_count() == edge_count_full(n); }
    bool operator==(const CubeSubgraph& o) const = default;
};

struct AttractorSet {
    // Each attractor as a sorted list of vertices.
    std::vector<std::vector<Config>> attractors;

    std::size_t count() const { return attractors.size(); }
    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s;
        for (auto& a : attractors) s.push_back(a.size());
        return s;
    }
};

struct PeriodicStructure {
    std::vector<int> period;         // per enc; 0 for transient configurations
    std::vector<int> cycle_lengths;  // sorted multiset
    std::vector<Config> fixed;       // sorted
    std::vector<Config> periodic;    // sorted
    int fp() const { return int(fixed.size()); }
};

StateDigraph synchronous_graph(const BoolNet& f);
StateDigraph asynchronous_graph(const BoolNet& f);
CubeSubgraph undirected_async(const BoolNet& f);

// Terminal strongly connected components.
AttractorSet attractors(const StateDigraph& G);
AttractorSet async_attractors(const BoolNet& f);  // attractors(A(f)) without materializing A(f)

std::vector<Config> fixed_points(const BoolNet& f);
PeriodicStructure periodic_structure(const BoolNet& f);

// Delta+ = {x : f(x) = complement(x)} (out-degree n in A(f));
// Delta- = {x : f_i(x+e_i) = x_i for all i} (in-degree n in A(f)).
std::pair<std::vector<Config>, std::vector<Config>> delta_sets(const BoolNet& f);

std::uint64_t image_count(const BoolNet& f, int k);

// A pair (a, b) with a, b, f(a), f(b) pairwise distinct, if any.
std::optional<std::pair<Config, Config>> contains_2P1(const BoolNet& f);

struct ReachReport {
    bool ok = false;
    // For each start, a witness path (start..end) ending in targets u FP(f),
    // with at most one weight-increasing arc; empty when the start is
    // itself in the target set. Unreachable starts get an empty path too and
    // are listed in unreached.
    std::vector<std::vector<Config>> paths;
    std::vector<Config> unreached;
    std::size_t max_path_arcs = 0;
};

// Does every configuration have a path in A(f) to targets u FP(f) with at
// most one increasing arc?
ReachReport almost_decreasing_reach(const BoolNet& f, const std::vector<Config>& targets);

std::string to_dot(const StateDigraph& G);
std::string to_dot(const StateDigraph& G, const AttractorSet& att);

}  // namespace bn

#endif
