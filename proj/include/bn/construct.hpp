#ifndef BN_CONSTRUCT_HPP
#define BN_CONSTRUCT_HPP

#include <optional>
#include <utility>

#include "bn/dynamics.hpp"

namespace bn {

// A small subgraph that can be forced into S(g) for some g ~ f, with its
// absorbing vertex set X and the attractor A it induces in A(g). The special
// arc of the open patterns constrains only the first coordinate of the image.
struct Pattern {
    std::string id;  // P1..P6, P0_1..P0_5, P1_1..P1_5
    std::vector<std::pair<Config, Config>> arcs;
    std::optional<std::pair<Config, int>> special;  // g_1(x) = a
    std::vector<Config> X;                          // down set, sorted
    std::vector<Config> A;                          // attractor, sorted, |A| <= 4
    bool has_free_slot = false;                     // open patterns need one extra image
};

const std::vector<Pattern>& pattern_catalog();
const Pattern& pattern_by_id(const std::string& id);

bool contains_pattern(const BoolNet& f, const Pattern& P);
// Containment plus the hypotheses that make X(P) absorbable: f(X-bar) != X-bar
// and the weight census of X-bar.
bool properly_contains_pattern(const BoolNet& f, const Pattern& P);

struct PlugResult {
    BoolNet g;
    const Pattern* pattern = nullptr;
};

// Some g ~ f properly containing a closed or 0-open pattern, dispatched on
// the minimum and maximum limit-cycle lengths. Requires fp(f) = 0, f^2 != id,
// n >= 4 and, at n = 4, none of the four exceptional classes.
PlugResult plug_pattern(const BoolNet& f);
PlugResult plug_pattern(const BoolNet& f, int variant);  // shift the free-image choice

struct GoodOrder {
    std::vector<Config> order;  // lists Y
};

// Total order on Y with: x before y and y not after f(x) implies f(y) before
// y. If maximal is given it must lie in Y minus f(Y) and comes last.
GoodOrder good_order(const BoolNet& f, const std::vector<Config>& Y, std::optional<Config> maximal);
bool is_good_order(const BoolNet& f, const GoodOrder& go);

// The swap-loop construction: h ~_X f such that every non-fixed configuration
// outside X has a decreasing out-arc in A(h). X must be a non-empty down set
// with f(X-bar) != X-bar and the weight census satisfied.
BoolNet decreasing_construct(const BoolNet& f, const std::vector<Config>& X);

// h ~ f whose asynchronous attractors are exactly the fp(f) fixed points,
// all reachable by almost decreasing paths. Requires fp(f) >= 1.
BoolNet converge_to_fixed_points(const BoolNet& f);

struct SmallAttractorResult {
    BoolNet h;
    std::vector<Config> attractor;  // sorted, size <= 4
};

// h ~ f with a unique asynchronous attractor of size at most 4, reachable by
// almost decreasing paths from everywhere. Requires fp(f) = 0.
SmallAttractorResult converge_to_small_attractor(const BoolNet& f);

struct BreakIsoResult {
    BoolNet h;
    std::string witness_kind;  // "delta-plus" or "delta-minus"
    std::string case_label;
    std::size_t f_value = 0;  // |Delta(f)| for the witness kind
    std::size_t h_value = 0;  // |Delta(h)|, different from f_value
};

// h ~ f with A(h) not isomorphic to A(f), witnessed by a differing count of
// out-degree-n or in-degree-n vertices. Requires f != constant, f != id,
// n >= 3.
BreakIsoResult break_async_iso(const BoolNet& f);

struct ManyAttractorsResult {
    BoolNet h;
    std::uint64_t count = 0;      // attractors of size <= 4 in A(h)
    std::uint64_t guarantee = 0;  // floor(image_count(f, 2) / 10)
};

// h ~ f with at least floor(d/10) asynchronous attractors of size <= 4,
// where d = |Im f^2|.
ManyAttractorsResult many_attractors(const BoolNet& f);

struct H4Coloring {
    std::vector<int> color;  // per enc, 0..3
};

// Arc of the 4-vertex template: c to c+1 and c to c+2 mod 4.
inline bool h4_arc(int c, int d) {
    int step = (d - c + 4) % 4;
    return step == 1 || step == 2;
}

// Balanced coloring of S(f) into the template above; f must be a permutation
// with all cycle lengths >= 2 and n >= 2.
H4Coloring h4_coloring(const BoolNet& f);

// h ~ f with A(h) strongly connected; f must be a fixed-point-free
// permutation. Paths of length at most d(x, y) + 4 exist between all pairs.
BoolNet strongly_connected_variant(const BoolNet& f);

// The four n=4 networks (no fixed point, f^2 != id) whose conjugates cannot
// properly contain any closed or 0-open pattern, shipped with a verified
// witness each.
struct ExceptionalFixture {
    BoolNet h;                      // the witness network
    std::vector<Config> attractor;  // its unique attractor, size 4
};

const std::vector<ExceptionalFixture>& n4_exceptional_fixtures();
// Index of the exceptional class f belongs to, if any (by canonical form).
std::optional<int> n4_exceptional_class(const BoolNet& f);

// The n=3 pair with isomorphic asynchronous graphs but non-isomorphic
// synchronous graphs (first: 000 -> 110 -> 111; second: 000 -> 110 and
// 011 -> 111; everything else fixed).
std::pair<BoolNet, BoolNet> async_isomorphic_pair();

}  // namespace bn

#endif
