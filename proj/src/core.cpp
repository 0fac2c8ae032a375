#include "bn/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bn {

std::string config_bits(Config x, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if ((x >> i) & 1) s[i] = '1';
    return s;
}

Config parse_bits(const std::string& s, int n) {
    if ((int)s.size() != n) throw ParseError("configuration '" + s + "' is not " + std::to_string(n) + " bits");
    Config x = 0;
    for (int i = 0; i < n; ++i) {
        if (s[i] == '1')
            x |= Config{1} << i;
        else if (s[i] != '0')
            throw ParseError("non-binary token '" + s + "'");
    }
    return x;
}

bool is_permutation(const BoolNet& f) {
    std::vector<bool> seen(f.size(), false);
    for (Config y : f.table) {
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

BoolNet identity_network(int n) {
    BoolNet f(n);
    std::iota(f.table.begin(), f.table.end(), 0u);
    return f;
}

BoolNet constant_network(int n, Config value) {
    BoolNet f(n);
    std::fill(f.table.begin(), f.table.end(), value);
    return f;
}

BoolNet negation_network(int n) {
    BoolNet f(n);
    for (Config x = 0; x < f.size(); ++x) f.table[x] = complement_of(x, n);
    return f;
}

StatePermutation::StatePermutation(int n_) : n(n_), images(std::size_t(1) << n_) {
    std::iota(images.begin(), images.end(), 0u);
}

StatePermutation::StatePermutation(int n_, std::vector<Config> im) : n(n_), images(std::move(im)) {
    std::vector<bool> seen(std::size_t(1) << n, false);
    if (images.size() != seen.size()) throw PreconditionError("state permutation has wrong size");
    for (Config y : images) {
        if (y >= seen.size() || seen[y]) throw PreconditionError("state permutation is not a bijection");
        seen[y] = true;
    }
}

StatePermutation StatePermutation::inverse() const {
    StatePermutation r(n);
    for (Config x = 0; x < size(); ++x) r.images[images[x]] = x;
    return r;
}

StatePermutation transposition(int n, Config a, Config b) {
    StatePermutation r(n);
    std::swap(r.images[a], r.images[b]);
    return r;
}

StatePermutation compose(const StatePermutation& p, const StatePermutation& q) {
    if (p.n != q.n) throw PreconditionError("dimension mismatch in compose");
    StatePermutation r(p.n);
    for (Config x = 0; x < r.size(); ++x) r.images[x] = p(q(x));
    return r;
}

BoolNet conjugate(const BoolNet& f, const StatePermutation& pi) {
    if (f.n != pi.n) throw PreconditionError("dimension mismatch in conjugate");
    BoolNet h(f.n);
    for (Config x = 0; x < f.size(); ++x) h.table[pi(x)] = pi(f(x));
    return h;
}

BoolNet parse_network(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<bool> have;
    BoolNet f;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            ls >> tag >> n;
            if (tag != "BN" || ls.fail() || n < 1 || n > kMaxN)
                throw ParseError("malformed header: '" + line + "'");
            f = BoolNet(n);
            have.assign(f.size(), false);
            continue;
        }
        std::string xs, ys;
        ls >> xs >> ys;
        std::string extra;
        if (ls.fail() || (ls >> extra))
            throw ParseError("malformed line: '" + line + "'");
        Config x = parse_bits(xs, n), y = parse_bits(ys, n);
        if (have[x]) throw ParseError("duplicate index " + xs);
        have[x] = true;
        f.table[x] = y;
        ++count;
    }
    if (n < 0) throw ParseError("missing BN header");
    if (count != f.size()) throw ParseError("wrong line count: got " + std::to_string(count) +
                                            ", expected " + std::to_string(f.size()));
    return f;
}

std::string serialize_network(const BoolNet& f) {
    std::string out = "BN " + std::to_string(f.n) + "\n";
    for (Config x = 0; x < f.size(); ++x)
        out += config_bits(x, f.n) + " " + config_bits(f(x), f.n) + "\n";
    return out;
}

static std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 RandomSource::engine() const {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL;
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b), std::uint32_t(b >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t draw_below(std::mt19937_64& g, std::uint64_t bound) {
    // Rejection sampling keeps results identical across standard libraries.
    std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t v;
    do {
        v = g();
    } while (v >= limit);
    return v % bound;
}

StatePermutation random_state_permutation(int n, std::mt19937_64& g) {
    StatePermutation pi(n);
    for (Config i = pi.size(); i > 1; --i)
        std::swap(pi.images[i - 1], pi.images[draw_below(g, i)]);
    return pi;
}

BoolNet random_network(int n, RandomSource rs) {
    auto g = rs.engine();
    BoolNet f(n);
    for (Config x = 0; x < f.size(); ++x) f.table[x] = Config(draw_below(g, f.size()));
    return f;
}

static bool cycle_lengths_ok(const BoolNet& f, const std::set<int>& forbid) {
    std::vector<bool> seen(f.size(), false);
    for (Config x = 0; x < f.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        Config y = x;
        do {
            seen[y] = true;
            y = f(y);
            ++len;
        } while (y != x);
        if (forbid.count(len)) return false;
    }
    return true;
}

BoolNet random_permutation_network(int n, RandomSource rs, const std::set<int>& forbid) {
    for (int len = 1; ; ++len) {
        if (len > (1 << n)) throw PreconditionError("infeasible cycle-length constraint");
        if (!forbid.count(len)) break;
    }
    auto g = rs.engine();
    for (int attempt = 0; attempt < 1 << 20; ++attempt) {
        StatePermutation pi = random_state_permutation(n, g);
        BoolNet f(n, pi.images);
        if (cycle_lengths_ok(f, forbid)) return f;
    }
    throw PreconditionError("rejection sampling failed to satisfy cycle-length constraint");
}

}  // namespace bn
