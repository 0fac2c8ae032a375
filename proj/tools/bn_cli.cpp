#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bn/construct.hpp"
#include "bn/iso.hpp"
#include "bn/solidity.hpp"

using nlohmann::json;
using namespace bn;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

BoolNet load_network(const std::string& path) { return parse_network(slurp(path)); }

// "AG <n>" header, then one "<x-bits> <y-bits>" line per arc.
StateDigraph parse_async_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    StateDigraph G;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            ls >> tag >> n;
            if (tag != "AG" || n < 1 || n > kMaxN) throw ParseError("bad AG header");
            G = StateDigraph(n);
            continue;
        }
        std::string xs, ys;
        if (!(ls >> xs >> ys)) throw ParseError("bad arc line: " + line);
        G.add_arc(parse_bits(xs, n), parse_bits(ys, n));
    }
    if (n < 0) throw ParseError("missing AG header");
    return G;
}

std::string csv_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json sorted_list(const std::vector<Config>& v) {
    std::vector<Config> s = v;
    std::sort(s.begin(), s.end());
    return json(s);
}

json analyze_report(const BoolNet& f) {
    PeriodicStructure ps = periodic_structure(f);
    AttractorSet att = async_attractors(f);
    auto [dp, dm] = delta_sets(f);
    SolidityReport sol = staple_closure(undirected_async(f));
    std::vector<std::size_t> sizes = att.sizes();
    std::sort(sizes.begin(), sizes.end());
    json rep;
    rep["n"] = f.n;
    rep["fixed-points"] = ps.fp();
    rep["cycle-lengths"] = ps.cycle_lengths;
    rep["delta-plus"] = dp.size();
    rep["delta-minus"] = dm.size();
    rep["attractors"] = att.count();
    rep["attractor-sizes"] = sizes;
    rep["image-count-2"] = image_count(f, 2);
    rep["solid-edges"] = sol.certified_solid_edges.edge_count();
    rep["edges-total"] = CubeSubgraph::edge_count_full(f.n);
    rep["closure-rounds"] = sol.closure_rounds;
    rep["fully-solid"] = sol.is_fully_solid;
    return rep;
}

void print_text(const json& rep) {
    for (auto& [key, value] : rep.items())
        std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                  << "\n";
}

struct ConstructOutput {
    BoolNet h;
    json cert;
};

ConstructOutput run_construct(const std::string& kind, const BoolNet& f) {
    ConstructOutput out;
    out.cert["schema"] = "cert-v1";
    out.cert["construction"] = kind;
    std::vector<std::string> checks{"canon-equal"};

    if (kind == "few-att") {
        out.h = converge_to_fixed_points(f);
        AttractorSet att = async_attractors(out.h);
        out.cert["witness-kind"] = "fixed-points";
        out.cert["attractor-count"] = att.count();
        out.cert["attractor-sizes"] = att.sizes();
        out.cert["fixed-points"] = fixed_points(f).size();
        checks.push_back("attractors-are-fixed-points");
        checks.push_back("almost-decreasing-reach");
    } else if (kind == "small-att") {
        SmallAttractorResult r = converge_to_small_attractor(f);
        out.h = r.h;
        out.cert["witness-kind"] = "unique-small-attractor";
        out.cert["attractor-count"] = 1;
        out.cert["attractor-sizes"] = json::array({r.attractor.size()});
        out.cert["attractor"] = sorted_list(r.attractor);
        checks.push_back("unique-attractor");
        checks.push_back("almost-decreasing-reach");
    } else if (kind == "many-att") {
        ManyAttractorsResult r = many_attractors(f);
        out.h = r.h;
        AttractorSet att = async_attractors(out.h);
        std::vector<std::size_t> sizes = att.sizes();
        std::sort(sizes.begin(), sizes.end());
        out.cert["witness-kind"] = "attractor-packing";
        out.cert["attractor-count"] = att.count();
        out.cert["attractor-sizes"] = sizes;
        out.cert["small-attractors"] = r.count;
        out.cert["guarantee"] = r.guarantee;
        checks.push_back("small-attractor-guarantee");
    } else if (kind == "strong") {
        out.h = strongly_connected_variant(f);
        out.cert["witness-kind"] = "strongly-connected";
        out.cert["attractor-count"] = 1;
        out.cert["attractor-sizes"] = json::array({out.h.size()});
        checks.push_back("strongly-connected");
    } else if (kind == "break-iso") {
        BreakIsoResult r = break_async_iso(f);
        out.h = r.h;
        AttractorSet att = async_attractors(out.h);
        std::vector<std::size_t> sizes = att.sizes();
        std::sort(sizes.begin(), sizes.end());
        out.cert["witness-kind"] = r.witness_kind;
        out.cert["case"] = r.case_label;
        out.cert["f-value"] = r.f_value;
        out.cert["h-value"] = r.h_value;
        out.cert["attractor-count"] = att.count();
        out.cert["attractor-sizes"] = sizes;
        checks.push_back("degree-census-differs");
    } else {
        throw ParseError("unknown construction kind: " + kind);
    }
    out.cert["checks-passed"] = checks;
    return out;
}

// Recomputes every claim of the certificate from the two network files alone.
void run_verify(const BoolNet& f, const BoolNet& h, const json& cert) {
    auto fail = [](const std::string& why) { throw VerificationError(why); };
    if (cert.value("schema", "") != "cert-v1") fail("unknown certificate schema");
    const std::string kind = cert.value("construction", "");

    if (canonical_form(f) != canonical_form(h)) fail("networks are not isomorphic");

    AttractorSet att = async_attractors(h);
    std::vector<std::size_t> sizes = att.sizes();
    std::sort(sizes.begin(), sizes.end());
    if (cert.contains("attractor-count") &&
        cert["attractor-count"].get<std::size_t>() != att.count())
        fail("attractor count mismatch");

    if (kind == "few-att") {
        std::vector<Config> fps = fixed_points(h);
        if (att.count() != fps.size()) fail("attractors do not match fixed points");
        for (auto& a : att.attractors)
            if (a.size() != 1) fail("non-singleton attractor");
        if (!almost_decreasing_reach(h, {}).ok) fail("fixed points not reachable");
    } else if (kind == "small-att") {
        if (att.count() != 1 || att.attractors[0].size() > 4) fail("not a unique small attractor");
        if (cert.contains("attractor") &&
            cert["attractor"].get<std::vector<Config>>() != att.attractors[0])
            fail("attractor mismatch");
        if (!almost_decreasing_reach(h, att.attractors[0]).ok) fail("attractor not reachable");
    } else if (kind == "many-att") {
        std::uint64_t small = 0;
        for (auto& a : att.attractors)
            if (a.size() <= 4) ++small;
        if (small < image_count(f, 2) / 10) fail("small-attractor guarantee missed");
        if (cert.contains("small-attractors") &&
            cert["small-attractors"].get<std::uint64_t>() != small)
            fail("small-attractor count mismatch");
    } else if (kind == "strong") {
        if (att.count() != 1 || att.attractors[0].size() != h.size())
            fail("asynchronous graph not strongly connected");
    } else if (kind == "break-iso") {
        auto df = delta_sets(f), dh = delta_sets(h);
        const std::string wk = cert.value("witness-kind", "");
        std::size_t fv = wk == "delta-plus" ? df.first.size() : df.second.size();
        std::size_t hv = wk == "delta-plus" ? dh.first.size() : dh.second.size();
        if (wk != "delta-plus" && wk != "delta-minus") fail("unknown witness kind");
        if (fv == hv) fail("degree census does not differ");
        if (cert.contains("f-value") && cert["f-value"].get<std::size_t>() != fv)
            fail("recorded f-value mismatch");
        if (cert.contains("h-value") && cert["h-value"].get<std::size_t>() != hv)
            fail("recorded h-value mismatch");
    } else {
        fail("unknown construction kind: " + kind);
    }
}

std::string run_experiment(const std::string& name, int n, double p, std::uint64_t samples,
                           std::uint64_t seed) {
    std::ostringstream out;
    RandomSource rs{seed, 0};
    if (name == "solidity") {
        double frac = solidity_experiment(n, p, samples, rs);
        out << "n,p,samples,certified_fraction,seed\n";
        out << n << "," << csv_double(p) << "," << samples << "," << csv_double(frac) << ","
            << seed << "\n";
    } else if (name == "image-count") {
        if (n < 1 || n > 16) throw PreconditionError("image-count experiment limited to n <= 16");
        double total = 0;
        for (std::uint64_t k = 0; k < samples; ++k) {
            BoolNet f = random_network(n, rs.substream(k));
            total += double(image_count(f, 2)) / double(f.size());
        }
        out << "n,samples,mean_image_fraction,seed\n";
        out << n << "," << samples << "," << csv_double(total / double(samples)) << "," << seed
            << "\n";
    } else if (name == "many-att-rate") {
        if (n < 1 || n > 14) throw PreconditionError("many-att-rate experiment limited to n <= 14");
        const double threshold = 0.046 * double(Config{1} << n);
        std::uint64_t hits = 0;
        for (std::uint64_t k = 0; k < samples; ++k) {
            BoolNet f = random_network(n, rs.substream(k));
            if (double(many_attractors(f).count) >= threshold) ++hits;
        }
        out << "n,samples,threshold,fraction,seed\n";
        out << n << "," << samples << "," << csv_double(threshold) << ","
            << csv_double(double(hits) / double(samples)) << "," << seed << "\n";
    } else {
        throw ParseError("unknown experiment: " + name);
    }
    return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        spill(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean network dynamics toolkit"};
    app.require_subcommand(1);

    std::string in_path, in_path2, cert_path, out_path, kind, name;
    std::string format = "text";
    std::uint64_t seed = 0, samples = 100;
    double p = 0.75;
    int n = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "text, json, dot or csv")
            ->check(CLI::IsMember({"text", "json", "dot", "csv"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "report the dynamics of a network");
    analyze->add_option("file", in_path, "BN file")->required();
    add_common(analyze);

    CLI::App* construct = app.add_subcommand("construct", "build an isomorphic witness network");
    construct->add_option("kind", kind, "few-att, small-att, many-att, strong or break-iso")
        ->required()
        ->check(CLI::IsMember({"few-att", "small-att", "many-att", "strong", "break-iso"}));
    construct->add_option("file", in_path, "BN file")->required();
    construct->add_option("--seed", seed, "unused; constructions are deterministic");
    add_common(construct);

    CLI::App* verify = app.add_subcommand("verify", "recheck a construction certificate");
    verify->add_option("input", in_path, "BN file of the original network")->required();
    verify->add_option("witness", in_path2, "BN file of the constructed network")->required();
    verify->add_option("certificate", cert_path, "JSON certificate")->required();

    CLI::App* experiment = app.add_subcommand("experiment", "seeded Monte Carlo runs");
    experiment->add_option("name", name, "solidity, image-count or many-att-rate")
        ->required()
        ->check(CLI::IsMember({"solidity", "image-count", "many-att-rate"}));
    experiment->add_option("--n", n, "dimension")->required();
    experiment->add_option("--p", p, "edge probability (solidity)");
    experiment->add_option("--samples", samples, "sample count");
    experiment->add_option("--seed", seed, "random seed");
    experiment->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "invert an asynchronous graph");
    reconstruct->add_option("file", in_path, "AG file")->required();
    reconstruct->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* iso = app.add_subcommand("iso", "compare two networks up to isomorphism");
    iso->add_option("first", in_path, "BN file")->required();
    iso->add_option("second", in_path2, "BN file")->required();
    add_common(iso);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            BoolNet f = load_network(in_path);
            if (format == "dot") {
                emit(to_dot(asynchronous_graph(f), async_attractors(f)), out_path);
            } else {
                json rep = analyze_report(f);
                if (format == "json")
                    emit(rep.dump(2) + "\n", out_path);
                else
                    print_text(rep);
            }
        } else if (*construct) {
            BoolNet f = load_network(in_path);
            ConstructOutput res = run_construct(kind, f);
            std::string net = serialize_network(res.h);
            std::string cert = res.cert.dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << net << cert;
            } else {
                spill(out_path, net);
                spill(out_path + ".cert.json", cert);
            }
        } else if (*verify) {
            BoolNet f = load_network(in_path);
            BoolNet h = load_network(in_path2);
            json cert = json::parse(slurp(cert_path));
            run_verify(f, h, cert);
            std::cout << "verification passed\n";
        } else if (*experiment) {
            emit(run_experiment(name, n, p, samples, seed), out_path);
        } else if (*reconstruct) {
            BoolNet f = reconstruct_network(parse_async_graph(slurp(in_path)));
            emit(serialize_network(f), out_path);
        } else if (*iso) {
            BoolNet a = load_network(in_path);
            BoolNet b = load_network(in_path2);
            json rep;
            rep["canon-equal"] = canonical_form(a) == canonical_form(b);
            if (a.n == b.n && a.n <= 12)
                rep["async-digraph-isomorphic"] =
                    are_isomorphic_digraphs(asynchronous_graph(a), asynchronous_graph(b))
                        .has_value();
            if (a.n == b.n && a.n <= 8)
                rep["async-isometric"] = are_isometric_async(a, b).has_value();
            if (format == "json")
                emit(rep.dump(2) + "\n", out_path);
            else
                print_text(rep);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
