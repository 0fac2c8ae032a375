#ifndef BN_CORE_HPP
#define BN_CORE_HPP

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bn {

// One configuration: an n-bit word. Coordinate i (1-based, as in the usual
// component indexing) lives in bit i-1, so e_i == 1u << (i-1) and the
// all-zero configuration is just 0.
using Config = std::uint32_t;

constexpr int kMaxN = 24;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Config unit(int i) { return Config{1} << (i - 1); }
inline Config full_mask(int n) { return (Config{1} << n) - 1; }
inline int weight(Config x) { return __builtin_popcount(x); }
inline int dist(Config x, Config y) { return weight(x ^ y); }
inline Config complement_of(Config x, int n) { return x ^ full_mask(n); }
// Componentwise partial order x <= y.
inline bool leq(Config x, Config y) { return (x & ~y) == 0; }
inline bool lt(Config x, Config y) { return x != y && leq(x, y); }
// Bit i (1-based coordinate) of x.
inline int coord(Config x, int i) { return (x >> (i - 1)) & 1; }

// (weight, enc) ascending; the deterministic order used for all the
// "pick the smallest candidate" choices in the constructions.
inline bool weight_enc_less(Config a, Config b) {
    int wa = weight(a), wb = weight(b);
    return wa != wb ? wa < wb : a < b;
}

std::string config_bits(Config x, int n);  // x_1 first (leftmost character)
Config parse_bits(const std::string& s, int n);

// A Boolean network f: {0,1}^n -> {0,1}^n as a full table indexed by enc(x).
struct BoolNet {
    int n = 0;
    std::vector<Config> table;

    BoolNet() = default;
    BoolNet(int n_, std::vector<Config> t) : n(n_), table(std::move(t)) {}
    explicit BoolNet(int n_) : n(n_), table(std::size_t(1) << n_, 0) {}

    Config size() const { return Config{1} << n; }
    Config operator()(Config x) const { return table[x]; }
    // Coordinate function f_i(x), 1-based.
    int component(Config x, int i) const { return coord(table[x], i); }

    bool operator==(const BoolNet& o) const = default;
};

bool is_permutation(const BoolNet& f);
BoolNet identity_network(int n);
BoolNet constant_network(int n, Config value);
BoolNet negation_network(int n);

// A permutation of {0,1}^n (state relabeling).
struct StatePermutation {
    int n = 0;
    std::vector<Config> images;

    StatePermutation() = default;
    explicit StatePermutation(int n_);  // identity
    StatePermutation(int n_, std::vector<Config> im);

    Config size() const { return Config{1} << n; }
    Config operator()(Config x) const { return images[x]; }
    StatePermutation inverse() const;

    bool operator==(const StatePermutation& o) const = default;
};

StatePermutation transposition(int n, Config a, Config b);
// compose(p, q)(x) = p(q(x))
StatePermutation compose(const StatePermutation& p, const StatePermutation& q);
// h = pi o f o pi^{-1}; h ~ f.
BoolNet conjugate(const BoolNet& f, const StatePermutation& pi);

// Text format: "BN <n>", then 2^n lines "<x-bits> <f(x)-bits>" in ascending
// enc order, leftmost character = coordinate 1. Lines starting '#' ignored.
BoolNet parse_network(const std::string& text);
std::string serialize_network(const BoolNet& f);

// Deterministic seeded randomness; identical (seed, stream) gives identical
// draws on any platform (bounded draws use rejection, not distributions).
struct RandomSource {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::mt19937_64 engine() const;
    RandomSource substream(std::uint64_t k) const { return {seed, stream * 0x10001 + k + 1}; }
};

std::uint64_t draw_below(std::mt19937_64& g, std::uint64_t bound);
StatePermutation random_state_permutation(int n, std::mt19937_64& g);
BoolNet random_network(int n, RandomSource rs);
// Uniform over permutations of {0,1}^n whose cycle-length multiset avoids
// forbid (rejection sampling).
BoolNet random_permutation_network(int n, RandomSource rs, const std::set<int>& forbid);

}  // namespace bn

#endif
