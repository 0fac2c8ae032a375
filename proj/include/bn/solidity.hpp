#ifndef BN_SOLIDITY_HPP
#define BN_SOLIDITY_HPP

#include <array>

#include "bn/dynamics.hpp"

namespace bn {

// A length-3 path of Q_n between the endpoints of an edge, as three
// (endpoint, direction) pairs.
struct Staple {
    std::array<std::pair<Config, int>, 3> edges;
};

// The n-1 pairwise edge-disjoint staples on the edge {x, y}; d(x, y) = 1.
std::vector<Staple> staples(int n, Config x, Config y);

struct SolidityReport {
    CubeSubgraph certified_solid_edges;
    bool is_fully_solid = false;
    int closure_rounds = 0;
};

// Repeatedly add every edge with at least 4 complete staples in the current
// edge set. Sound under-approximation of the solid closure; is_fully_solid
// certifies solidity.
SolidityReport staple_closure(const CubeSubgraph& G);

// Edge set preserved by every embedding of G into Q_n, by enumerating all
// (2^n)! vertex permutations; n <= 3.
CubeSubgraph exact_solid_closure(const CubeSubgraph& G);

// Each edge of Q_n kept independently with probability p; one uniform draw
// per edge in index order, so the same source with a larger p yields a
// supergraph (common random numbers).
CubeSubgraph random_cube_subgraph(int n, double p, RandomSource rs);

// Fraction of `samples` random subgraphs whose staple closure is all of Q_n;
// sample k uses rs.substream(k). n <= 14.
double solidity_experiment(int n, double p, std::uint64_t samples, RandomSource rs);

// Whether the undirected asynchronous graph of f is certified solid, which
// makes A(f) determine f up to isomorphism.
bool async_solidity_link(const BoolNet& f);

}  // namespace bn

#endif
