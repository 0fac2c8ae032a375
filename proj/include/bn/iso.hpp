#ifndef BN_ISO_HPP
#define BN_ISO_HPP

#include <algorithm>
#include <optional>

#include "bn/dynamics.hpp"

namespace bn {

// Hypercube automorphism pi(x) = sigma(x) + a, where sigma permutes the
// coordinates: bit i of x goes to bit sigma[i] (0-based).
struct HyperIsometry {
    int n = 0;
    std::vector<int> sigma;
    Config a = 0;

    Config apply(Config x) const {
        Config y = 0;
        for (int i = 0; i < n; ++i)
            if ((x >> i) & 1) y |= Config{1} << sigma[i];
        return y ^ a;
    }
    // Image of a direction bitmask under sigma alone (no translation).
    Config apply_mask(Config m) const {
        Config y = 0;
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1) y |= Config{1} << sigma[i];
        return y;
    }
};

StatePermutation to_state_permutation(const HyperIsometry& iso);

// Calls fn for each of the n! * 2^n isometries exactly once; n <= 8.
template <class Fn>
void for_each_isometry(int n, Fn&& fn);

std::vector<HyperIsometry> enumerate_isometries(int n);  // n <= 6
HyperIsometry random_isometry(int n, std::mt19937_64& g);

// Canonical form of the functional digraph S(f): trees hanging on cycles are
// AHU-canonicalized, each cycle takes the lexicographically minimal rotation
// of its tree-certificate sequence, components are sorted.
struct CanonicalForm {
    std::string repr;
    std::string summary;  // human-readable cycle/tree digest

    bool operator==(const CanonicalForm& o) const { return repr == o.repr; }
    bool operator!=(const CanonicalForm& o) const { return repr != o.repr; }
    bool operator<(const CanonicalForm& o) const { return repr < o.repr; }
    std::string hex_digest() const;
};

CanonicalForm canonical_form(const BoolNet& f);
bool are_isomorphic_networks(const BoolNet& f, const BoolNet& h);

// An isometry pi with xy in A(f) iff pi(x)pi(y) in A(h), or none; n <= 8.
std::optional<HyperIsometry> are_isometric_async(const BoolNet& f, const BoolNet& h);

// Exact digraph isomorphism via backtracking over color-refined classes;
// complete for vertex counts up to 2^12.
std::optional<StatePermutation> are_isomorphic_digraphs(const StateDigraph& G, const StateDigraph& H);

// Inversion of the asynchronous graph: f(x) = x + sum of (x+y) over
// out-neighbors y of x. Every arc must join distance-1 configurations.
BoolNet reconstruct_network(const StateDigraph& A);

// --- template implementation ---

template <class Fn>
void for_each_isometry(int n, Fn&& fn) {
    if (n > 8) throw PreconditionError("isometry enumeration limited to n <= 8");
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    HyperIsometry iso{n, sigma, 0};
    do {
        iso.sigma = sigma;
        for (Config a = 0; a < (Config{1} << n); ++a) {
            iso.a = a;
            fn(iso);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace bn

#endif
