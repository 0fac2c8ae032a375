#include "bn/iso.hpp"

#include <map>

namespace bn {

StatePermutation to_state_permutation(const HyperIsometry& iso) {
    StatePermutation pi(iso.n);
    for (Config x = 0; x < pi.size(); ++x) pi.images[x] = iso.apply(x);
    return pi;
}

std::vector<HyperIsometry> enumerate_isometries(int n) {
    if (n > 6) throw PreconditionError("materialized isometry list limited to n <= 6");
    std::vector<HyperIsometry> out;
    for_each_isometry(n, [&](const HyperIsometry& iso) { out.push_back(iso); });
    return out;
}

HyperIsometry random_isometry(int n, std::mt19937_64& g) {
    HyperIsometry iso;
    iso.n = n;
    iso.sigma.resize(n);
    for (int i = 0; i < n; ++i) iso.sigma[i] = i;
    for (int i = n; i > 1; --i) std::swap(iso.sigma[i - 1], iso.sigma[draw_below(g, i)]);
    iso.a = Config(draw_below(g, Config{1} << n));
    return iso;
}

std::string CanonicalForm::hex_digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : repr) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 15];
    return out;
}

CanonicalForm canonical_form(const BoolNet& f) {
    const Config N = f.size();
    PeriodicStructure ps = periodic_structure(f);

    // Tree certificates of the transients hanging on the cycles; a cycle
    // vertex is the root of its own hanging tree. AHU, iteratively: process
    // a vertex once all its tree children are done.
    std::vector<std::vector<Config>> children(N);
    std::vector<int> pending(N, 0);
    for (Config x = 0; x < N; ++x)
        if (ps.period[x] == 0) {
            children[f(x)].push_back(x);
            pending[f(x)]++;
        }
    std::vector<std::string> cert(N);
    std::vector<Config> queue;
    for (Config x = 0; x < N; ++x)
        if (pending[x] == 0 && ps.period[x] == 0) queue.push_back(x);
    auto finalize = [&](Config x) {
        std::vector<std::string> kids;
        for (Config c : children[x]) kids.push_back(std::move(cert[c]));
        std::sort(kids.begin(), kids.end());
        std::string s = "(";
        for (auto& k : kids) s += k;
        s += ")";
        cert[x] = std::move(s);
    };
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Config x = queue[qi];
        finalize(x);
        if (--pending[f(x)] == 0 && ps.period[f(x)] == 0) queue.push_back(f(x));
    }
    for (Config x = 0; x < N; ++x)
        if (ps.period[x] > 0) finalize(x);

    // One certificate per component: minimal rotation of the cycle's
    // tree-certificate sequence.
    std::vector<std::string> comps;
    std::vector<bool> done(N, false);
    for (Config s = 0; s < N; ++s) {
        if (ps.period[s] == 0 || done[s]) continue;
        std::vector<std::string> seq;
        Config x = s;
        do {
            done[x] = true;
            seq.push_back(cert[x]);
            x = f(x);
        } while (x != s);
        std::size_t best = 0;
        for (std::size_t r = 1; r < seq.size(); ++r) {
            for (std::size_t k = 0; k < seq.size(); ++k) {
                const std::string& a = seq[(r + k) % seq.size()];
                const std::string& b = seq[(best + k) % seq.size()];
                if (a != b) {
                    if (a < b) best = r;
                    break;
                }
            }
        }
        std::string c = "[";
        for (std::size_t k = 0; k < seq.size(); ++k) c += seq[(best + k) % seq.size()];
        c += "]";
        comps.push_back(std::move(c));
    }
    std::sort(comps.begin(), comps.end());

    CanonicalForm out;
    out.repr = "n=" + std::to_string(f.n) + ";";
    for (auto& c : comps) out.repr += c;
    out.summary = "cycles:";
    for (std::size_t i = 0; i < ps.cycle_lengths.size(); ++i)
        out.summary += (i ? "," : " ") + std::to_string(ps.cycle_lengths[i]);
    out.summary += "; transients: " + std::to_string(N - ps.periodic.size());
    return out;
}

bool are_isomorphic_networks(const BoolNet& f, const BoolNet& h) {
    if (f.n != h.n) return false;
    return canonical_form(f) == canonical_form(h);
}

// Per-direction counts of up-arcs and down-arcs of A(f); used to prune the
// isometry search.
static void direction_profile(const BoolNet& f, std::vector<int>& up, std::vector<int>& down) {
    up.assign(f.n, 0);
    down.assign(f.n, 0);
    for (Config x = 0; x < f.size(); ++x) {
        Config diff = x ^ f(x);
        for (int i = 0; i < f.n; ++i)
            if ((diff >> i) & 1) ((x >> i) & 1 ? down : up)[i]++;
    }
}

std::optional<HyperIsometry> are_isometric_async(const BoolNet& f, const BoolNet& h) {
    if (f.n != h.n) throw PreconditionError("dimension mismatch");
    std::vector<int> fu, fd, hu, hd;
    direction_profile(f, fu, fd);
    direction_profile(h, hu, hd);

    std::optional<HyperIsometry> found;
    // Exhaustive over the automorphism group with cheap per-direction pruning
    // and early exit on the first arc mismatch.
    try {
        for_each_isometry(f.n, [&](const HyperIsometry& iso) {
            for (int i = 0; i < f.n; ++i) {
                int j = iso.sigma[i];
                bool flip = (iso.a >> j) & 1;
                int wantu = flip ? fd[i] : fu[i], wantd = flip ? fu[i] : fd[i];
                if (hu[j] != wantu || hd[j] != wantd) return;
            }
            for (Config x = 0; x < f.size(); ++x) {
                Config px = iso.apply(x);
                if ((px ^ h(px)) != iso.apply_mask(x ^ f(x))) return;
            }
            found = iso;
            throw 0;  // early exit from the enumeration
        });
    } catch (int) {
    }
    return found;
}

namespace {

// Iterated (indeg, outdeg, neighbor-class multiset) refinement shared by both
// graphs so resulting colors are comparable.
std::vector<int> refine_colors(const StateDigraph& G, const StateDigraph& H, std::vector<int>& colH) {
    const int NG = int(G.size()), NH = int(H.size());
    std::vector<int> colG(NG, 0);
    colH.assign(NH, 0);
    int classes = 1;
    for (int round = 0; round < NG + NH + 1; ++round) {
        using Sig = std::pair<int, std::pair<std::vector<int>, std::vector<int>>>;
        std::map<Sig, int> table;
        auto signature = [&](const StateDigraph& D, const std::vector<int>& col, int v) {
            Sig s;
            s.first = col[v];
            D.rows[v].for_each([&](Config w) { s.second.first.push_back(col[w]); });
            std::sort(s.second.first.begin(), s.second.first.end());
            for (int u = 0; u < int(D.size()); ++u)
                if (D.rows[u].test(v)) s.second.second.push_back(col[u]);
            std::sort(s.second.second.begin(), s.second.second.end());
            return s;
        };
        std::vector<int> ng(NG), nh(NH);
        for (int v = 0; v < NG; ++v) {
            auto s = signature(G, colG, v);
            auto it = table.emplace(std::move(s), int(table.size())).first;
            ng[v] = it->second;
        }
        for (int v = 0; v < NH; ++v) {
            auto s = signature(H, colH, v);
            auto it = table.emplace(std::move(s), int(table.size())).first;
            nh[v] = it->second;
        }
        int new_classes = int(table.size());
        colG = std::move(ng);
        colH = std::move(nh);
        if (new_classes == classes) break;
        classes = new_classes;
    }
    return colG;
}

struct IsoSearch {
    const StateDigraph& G;
    const StateDigraph& H;
    std::vector<int> colG, colH;
    std::vector<int> order;       // G vertices, smallest color classes first
    std::vector<long> map_to;     // G -> H or -1
    std::vector<bool> used;       // H side

    bool consistent(int v, int w, std::size_t depth) {
        for (std::size_t k = 0; k < depth; ++k) {
            int v2 = order[k], w2 = int(map_to[v2]);
            if (G.has_arc(v, v2) != H.has_arc(w, w2)) return false;
            if (G.has_arc(v2, v) != H.has_arc(w2, w)) return false;
        }
        return G.has_arc(v, v) == H.has_arc(w, w);
    }

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        int v = order[depth];
        for (int w = 0; w < int(H.size()); ++w) {
            if (used[w] || colH[w] != colG[v] || !consistent(v, w, depth)) continue;
            used[w] = true;
            map_to[v] = w;
            if (extend(depth + 1)) return true;
            used[w] = false;
            map_to[v] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<StatePermutation> are_isomorphic_digraphs(const StateDigraph& G, const StateDigraph& H) {
    if (G.size() > (1u << 12) || H.size() > (1u << 12))
        throw PreconditionError("digraph isomorphism limited to 2^12 vertices");
    if (G.size() != H.size() || G.arc_count() != H.arc_count()) return std::nullopt;

    IsoSearch s{G, H, {}, {}, {}, {}, {}};
    s.colG = refine_colors(G, H, s.colH);
    // Colors come from a table shared by both graphs, so they can exceed
    // the vertex count of either one.
    std::vector<int> cntG(G.size() + H.size(), 0), cntH(G.size() + H.size(), 0);
    for (int c : s.colG) cntG[c]++;
    for (int c : s.colH) cntH[c]++;
    if (cntG != cntH) return std::nullopt;

    s.order.resize(G.size());
    for (std::size_t i = 0; i < s.order.size(); ++i) s.order[i] = int(i);
    std::stable_sort(s.order.begin(), s.order.end(),
                     [&](int a, int b) { return cntG[s.colG[a]] < cntG[s.colG[b]]; });
    s.map_to.assign(G.size(), -1);
    s.used.assign(H.size(), false);
    if (!s.extend(0)) return std::nullopt;

    StatePermutation pi(G.n);
    for (Config v = 0; v < G.size(); ++v) pi.images[v] = Config(s.map_to[v]);
    return pi;
}

BoolNet reconstruct_network(const StateDigraph& A) {
    BoolNet f(A.n);
    for (Config x = 0; x < A.size(); ++x) {
        Config y = x;
        bool bad = false;
        A.rows[x].for_each([&](Config w) {
            if (dist(x, w) != 1) bad = true;
            y ^= x ^ w;
        });
        if (bad) throw PreconditionError("arc between non-adjacent hypercube vertices");
        f.table[x] = y;
    }
    return f;
}

}  // namespace bn
