#include <algorithm>

#include "bn/construct.hpp"
#include "bn/iso.hpp"

namespace bn {

namespace {

struct FixtureSpec {
    std::vector<Config> table;
    std::vector<Config> attractor;
    std::vector<int> cycle_lengths;  // sorted multiset of S(h)
    int transients;
};

// The four n=4 witnesses, transcribed arc by arc from their synchronous
// graphs; every construction below is re-checked at load time.
const FixtureSpec kSpecs[4] = {
    // One 5-cycle with a single transient feeding it, plus two 5-cycles.
    {{3, 4, 0, 5, 0, 1, 9, 11, 6, 10, 12, 13, 8, 14, 15, 7}, {0, 1, 2, 5}, {5, 5, 5}, 1},
    // Two 5-cycles and a 6-cycle.
    {{3, 4, 0, 5, 2, 1, 9, 11, 6, 10, 12, 13, 8, 14, 15, 7}, {0, 1, 2, 5}, {5, 5, 6}, 0},
    // A 4-cycle and two 6-cycles.
    {{1, 3, 0, 2, 9, 15, 10, 11, 4, 6, 12, 13, 8, 14, 5, 7}, {0, 1, 2, 3}, {4, 6, 6}, 0},
    // Four 4-cycles.
    {{1, 3, 0, 2, 9, 8, 10, 12, 4, 5, 7, 15, 6, 11, 13, 14}, {0, 1, 2, 3}, {4, 4, 4, 4}, 0},
};

std::vector<ExceptionalFixture> build_fixtures() {
    std::vector<ExceptionalFixture> out;
    for (const FixtureSpec& spec : kSpecs) {
        BoolNet h(4, spec.table);
        if (!fixed_points(h).empty()) throw VerificationError("fixture has a fixed point");
        bool involution = true;
        for (Config x = 0; x < h.size() && involution; ++x) involution = h(h(x)) == x;
        if (involution) throw VerificationError("fixture is an involution");

        PeriodicStructure ps = periodic_structure(h);
        if (ps.cycle_lengths != spec.cycle_lengths ||
            int(h.size() - ps.periodic.size()) != spec.transients)
            throw VerificationError("fixture cycle structure mismatch");

        AttractorSet att = async_attractors(h);
        if (att.count() != 1 || att.attractors[0] != spec.attractor)
            throw VerificationError("fixture attractor mismatch");
        if (!almost_decreasing_reach(h, spec.attractor).ok)
            throw VerificationError("fixture attractor not reachable");

        out.push_back({std::move(h), spec.attractor});
    }
    return out;
}

}  // namespace

const std::vector<ExceptionalFixture>& n4_exceptional_fixtures() {
    static const std::vector<ExceptionalFixture> fixtures = build_fixtures();
    return fixtures;
}

std::optional<int> n4_exceptional_class(const BoolNet& f) {
    if (f.n != 4) return std::nullopt;
    static const std::vector<CanonicalForm> canon = [] {
        std::vector<CanonicalForm> c;
        for (const ExceptionalFixture& fx : n4_exceptional_fixtures())
            c.push_back(canonical_form(fx.h));
        return c;
    }();
    CanonicalForm cf = canonical_form(f);
    for (int k = 0; k < 4; ++k)
        if (canon[k] == cf) return k;
    return std::nullopt;
}

std::pair<BoolNet, BoolNet> async_isomorphic_pair() {
    BoolNet left = identity_network(3);
    left.table[parse_bits("000", 3)] = parse_bits("110", 3);
    left.table[parse_bits("110", 3)] = parse_bits("111", 3);
    BoolNet right = identity_network(3);
    right.table[parse_bits("000", 3)] = parse_bits("110", 3);
    right.table[parse_bits("011", 3)] = parse_bits("111", 3);
    return {std::move(left), std::move(right)};
}

}  // namespace bn
