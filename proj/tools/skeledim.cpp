// skeledim command-line front end. Every subcommand echoes the command
// name, seed, and graph fingerprint so runs are reproducible; output is
// deterministic for a fixed command line (timings go to stderr only).
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 I/O or format error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "skeledim/d_preserving.hpp"
#include "skeledim/graph.hpp"
#include "skeledim/grid.hpp"
#include "skeledim/hub_labeling.hpp"
#include "skeledim/packing.hpp"
#include "skeledim/rho.hpp"
#include "skeledim/skeleton.hpp"
#include "skeledim/sptree.hpp"
#include "skeledim/util.hpp"

using namespace skeledim;
using json = nlohmann::ordered_json;

namespace {

std::string hex64(uint64_t x) {
    char buf[19];
    snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
    return buf;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << j.dump(2) << "\n";
        std::cout << j.dump(2) << "\n";
    }
}

WeightedGraph load_graph(const std::string& path) {
    auto t0 = std::chrono::steady_clock::now();
    WeightedGraph g = parse_dimacs_file(path);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "loaded " << path << ": n=" << g.node_count() << " m=" << g.edge_count() << " ("
              << ms << " ms)\n";
    return g;
}

NodeId parse_node(const WeightedGraph& g, uint64_t one_based) {
    if (one_based < 1 || one_based > g.node_count())
        throw ParamError("node id out of range: " + std::to_string(one_based));
    return static_cast<NodeId>(one_based - 1);
}

json width_histogram(const std::vector<uint32_t>& widths) {
    std::map<uint32_t, uint32_t> h;
    for (uint32_t w : widths) h[w]++;
    json j = json::object();
    for (auto [w, c] : h) j[std::to_string(w)] = c;
    return j;
}

//--------------------------- subcommands ---------------------------

struct StatsArgs {
    std::string graph_path, out_path, reach_metric = "base", alpha = "1/2";
    std::vector<std::string> metric_files;
    uint32_t roots = 0;  // 0 = all
    uint64_t seed = 0;
    unsigned threads = 0;
    uint64_t isk_cutoff = 0;
};

int run_stats(const StatsArgs& a) {
    WeightedGraph g = load_graph(a.graph_path);
    for (const std::string& spec : a.metric_files) {
        size_t eq = spec.find('=');
        if (eq == std::string::npos) throw ParamError("--metric-file expects name=path");
        add_metric_from_dimacs(g, spec.substr(0, eq), spec.substr(eq + 1));
    }
    int metric = g.metric_id(a.reach_metric);
    if (metric < 0) throw ParamError("unknown metric: " + a.reach_metric);
    Rat alpha = parse_rat(a.alpha);
    if (alpha.num <= 0 || alpha > Rat(1)) throw ParamError("alpha must be in (0, 1]");

    RootSelection sel =
        a.roots == 0 ? RootSelection::all_roots() : RootSelection::sampled(a.roots, a.seed);
    SkeletonStats st = skeleton_dimension(g, sel, metric, alpha, a.threads, true, a.isk_cutoff);

    json j;
    j["command"] = "stats";
    j["seed"] = a.seed;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["params"] = {{"alpha", alpha.str()},
                   {"reach_metric", a.reach_metric},
                   {"roots", a.roots == 0 ? std::string("all") : std::to_string(a.roots)},
                   {"isk_cutoff", a.isk_cutoff}};
    j["k"] = st.k;
    j["k_is_lower_bound"] = st.sampled;
    j["avg_width"] = st.avg_width;
    j["width_histogram"] = width_histogram(st.widths);
    j["isk_avg"] = st.isk_avg;
    emit(j, a.out_path);
    return 0;
}

int run_label_build(const std::string& graph_path, uint64_t seed, const std::string& out_path,
                    unsigned threads) {
    WeightedGraph g = load_graph(graph_path);
    Labeling l = build_labeling(g, seed, threads);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    write_labeling(l, out);
    LabelSizeStats st = label_size_stats(l);
    json j;
    j["command"] = "label build";
    j["seed"] = seed;
    j["fingerprint"] = hex64(l.fingerprint);
    j["n"] = l.n;
    j["mean_hub_size"] = st.mean;
    j["max_hub_size"] = st.max;
    j["out"] = out_path;
    std::cout << j.dump(2) << "\n";
    return 0;
}

Labeling load_labeling(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_labeling(in);
}

int run_label_query(const std::string& label_path, uint64_t u, uint64_t v) {
    Labeling l = load_labeling(label_path);
    if (u < 1 || u > l.n || v < 1 || v > l.n) throw ParamError("node id out of range");
    std::cout << query(l, static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)) << "\n";
    return 0;
}

int run_label_verify(const std::string& graph_path, const std::string& label_path,
                     bool exhaustive, uint64_t pairs, uint64_t seed) {
    WeightedGraph g = load_graph(graph_path);
    Labeling l = load_labeling(label_path);
    if (l.fingerprint != graph_fingerprint(g)) {
        std::cout << "fingerprint mismatch: labels were not built from this graph\n";
        return 2;
    }
    if (l.n != g.node_count()) {
        std::cout << "node count mismatch\n";
        return 2;
    }
    LabelVerifyReport rep = verify_labeling(g, l, exhaustive, pairs, seed);
    std::cout << rep.mismatches << " mismatches / " << rep.pairs << " pairs\n";
    for (auto [u, v, got, want] : rep.samples)
        std::cout << "  pair (" << u + 1 << "," << v + 1 << "): got " << got << " want " << want
                  << "\n";
    return rep.ok() ? 0 : 2;
}

int run_label_stats(const std::string& label_path) {
    Labeling l = load_labeling(label_path);
    LabelSizeStats st = label_size_stats(l);
    json j;
    j["command"] = "label stats";
    j["seed"] = l.seed;
    j["fingerprint"] = hex64(l.fingerprint);
    j["n"] = l.n;
    j["mean_hub_size"] = st.mean;
    j["min_hub_size"] = st.min;
    j["max_hub_size"] = st.max;
    json hist = json::object();
    for (auto [size, count] : st.histogram) hist[std::to_string(size)] = count;
    j["size_histogram"] = hist;
    std::cout << j.dump(2) << "\n";
    return 0;
}

DpLabeling load_dp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_dp_labeling(in);
}

int run_dpres_build(const std::string& graph_path, uint32_t D, uint64_t seed,
                    const std::string& out_path, unsigned threads) {
    WeightedGraph g = load_graph(graph_path);
    DpLabeling l = build_d_preserving_labeling(g, D, seed, threads);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    write_dp_labeling(l, out);
    uint64_t total = 0;
    for (const DpLabel& lab : l.labels) total += lab.node_hubs.size() + lab.edge_hubs.size();
    json j;
    j["command"] = "dpres build";
    j["seed"] = seed;
    j["fingerprint"] = hex64(l.fingerprint);
    j["n"] = l.n;
    j["D"] = l.D;
    j["Dmax"] = l.Dmax;
    j["mean_hub_size"] = l.n ? static_cast<double>(total) / l.n : 0.0;
    j["out"] = out_path;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_dpres_query(const std::string& label_path, uint64_t u, uint64_t v) {
    DpLabeling l = load_dp(label_path);
    if (u < 1 || u > l.n || v < 1 || v > l.n) throw ParamError("node id out of range");
    auto got = query_d_preserving(l.labels[u - 1], l.labels[v - 1]);
    if (got)
        std::cout << *got << "\n";
    else
        std::cout << "below-range\n";
    return 0;
}

int run_dpres_verify(const std::string& graph_path, const std::string& label_path,
                     uint32_t min_dist, bool exhaustive, uint64_t pairs, uint64_t seed) {
    WeightedGraph g = load_graph(graph_path);
    DpLabeling l = load_dp(label_path);
    if (l.fingerprint != graph_fingerprint(g)) {
        std::cout << "fingerprint mismatch: labels were not built from this graph\n";
        return 2;
    }
    if (min_dist == 0) min_dist = l.D;
    DpVerifyReport rep = verify_dp_labeling(g, l, min_dist, exhaustive, pairs, seed);
    std::cout << rep.mismatches << " mismatches / " << rep.pairs << " pairs at distance >= "
              << min_dist << " (" << rep.unsound << " unsound below range)\n";
    for (auto [u, v, got, want] : rep.samples)
        std::cout << "  pair (" << u + 1 << "," << v + 1 << "): got " << got << " want " << want
                  << "\n";
    return rep.ok() ? 0 : 2;
}

int run_canon(const std::string& graph_path, const std::string& out_path) {
    WeightedGraph g = load_graph(graph_path);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    write_dimacs(g, WeightedGraph::BASE_METRIC, out);
    json j;
    j["command"] = "gen canon";
    j["seed"] = 0;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["out"] = out_path;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_gen_grid(uint32_t L, const std::string& out_path) {
    WeightedGraph g = generate_grid(L);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    write_dimacs(g, WeightedGraph::BASE_METRIC, out);
    json j;
    j["command"] = "gen grid";
    j["seed"] = 0;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["L"] = L;
    j["n"] = g.node_count();
    j["m"] = g.edge_count();
    j["out"] = out_path;
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct BoxArgs {
    std::string co_path;
    std::vector<int64_t> bbox;  // x1 y1 x2 y2, any corner order
    uint32_t centers = 5;
};

// candidate centers inside the coordinate box, evenly thinned
std::vector<NodeId> centers_in_box(const WeightedGraph& g, const BoxArgs& box) {
    auto coords = parse_dimacs_coords(box.co_path, g.node_count());
    int64_t x1 = std::min(box.bbox[0], box.bbox[2]), x2 = std::max(box.bbox[0], box.bbox[2]);
    int64_t y1 = std::min(box.bbox[1], box.bbox[3]), y2 = std::max(box.bbox[1], box.bbox[3]);
    std::vector<NodeId> inside;
    for (NodeId v = 0; v < g.node_count(); v++) {
        auto [x, y] = coords[v];
        if (x >= x1 && x <= x2 && y >= y1 && y <= y2) inside.push_back(v);
    }
    if (inside.empty()) throw ParamError("no node inside the bounding box");
    if (inside.size() > box.centers) {
        std::vector<NodeId> thinned;
        double step = static_cast<double>(inside.size()) / box.centers;
        for (uint32_t i = 0; i < box.centers; i++)
            thinned.push_back(inside[static_cast<size_t>(i * step)]);
        inside = std::move(thinned);
    }
    return inside;
}

int run_pack(const std::string& graph_path, uint64_t center, Dist radius, PackingOptions opt,
             const std::string& out_path, const BoxArgs& box) {
    WeightedGraph g = load_graph(graph_path);
    PackingResult res;
    if (box.co_path.empty()) {
        res = pack_paths(g, parse_node(g, center), radius, opt);
    } else {
        // try every candidate center in the box, keep the best packing
        if (box.bbox.size() != 4) throw ParamError("--bbox expects x1,y1,x2,y2");
        for (NodeId c : centers_in_box(g, box)) {
            PackingResult r = pack_paths(g, c, radius, opt);
            std::cerr << "center " << c + 1 << ": " << r.size() << " paths\n";
            if (r.size() > res.size()) res = std::move(r);
        }
    }
    PackingCheck check = verify_packing(g, res);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        for (const auto& path : res.paths) {
            for (size_t i = 0; i < path.size(); i++) out << (i ? " " : "") << path[i] + 1;
            out << "\n";
        }
    }
    json j;
    j["command"] = "pack";
    j["seed"] = opt.seed;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["center"] = res.center + 1;
    j["radius"] = radius;
    j["budget"] = opt.budget;
    j["packing_size"] = res.size();
    j["verified"] = check.ok();
    std::cout << j.dump(2) << "\n";
    return check.ok() ? 0 : 2;
}

int run_study_separation(uint32_t l_min, uint32_t l_max, PackingOptions opt, unsigned threads,
                         const std::string& out_path) {
    std::vector<SeparationRow> rows = separation_study(l_min, l_max, opt, threads);
    std::ostringstream csv;
    csv << "L,n,k,pack_lb\n";
    for (const SeparationRow& r : rows)
        csv << r.L << "," << r.n << "," << r.k << "," << r.pack_lb << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << csv.str();
    }
    std::cout << csv.str();
    return 0;
}

struct NyArgs {
    std::string graph_path;
    std::string second;  // name=path of an extra metric file
    std::string reach_metric = "base";
    bool full = false;
    uint32_t roots = 500;
    uint64_t seed = 0;
    unsigned threads = 0;
};

// Sampled widths give a certified lower bound on the skeleton dimension;
// --full runs every root and is an hours-scale job on continental graphs.
int run_study_ny(const NyArgs& a) {
    WeightedGraph g = load_graph(a.graph_path);
    if (!a.second.empty()) {
        size_t eq = a.second.find('=');
        if (eq == std::string::npos) throw ParamError("--second expects name=path");
        add_metric_from_dimacs(g, a.second.substr(0, eq), a.second.substr(eq + 1));
    }
    int metric = g.metric_id(a.reach_metric);
    if (metric < 0) throw ParamError("unknown metric: " + a.reach_metric);
    RootSelection sel =
        a.full ? RootSelection::all_roots() : RootSelection::sampled(a.roots, a.seed);
    SkeletonStats st = skeleton_dimension(g, sel, metric, Rat(1, 2), a.threads);
    json j;
    j["command"] = "study ny";
    j["seed"] = a.seed;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["reach_metric"] = a.reach_metric;
    j["roots"] = st.roots.size();
    j[a.full ? "k" : "k_lower_bound"] = st.k;
    j["avg_width"] = st.avg_width;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_cover(const std::string& graph_path, uint64_t center, Dist radius, bool check) {
    WeightedGraph g = load_graph(graph_path);
    NodeId u = parse_node(g, center);
    std::vector<NodeId> centers = doubling_cover(g, u, radius);
    bool covered = true;
    if (check) {
        Dist target = 19 * radius / 9;
        std::vector<Dist> du = dijkstra_distances(g, u);
        std::vector<char> within(g.node_count(), 0);
        for (NodeId c : centers) {
            std::vector<Dist> dc = dijkstra_distances(g, c, WeightedGraph::BASE_METRIC, radius);
            for (NodeId v = 0; v < g.node_count(); v++)
                if (dc[v] <= radius) within[v] = 1;
        }
        for (NodeId v = 0; v < g.node_count(); v++)
            if (du[v] <= target && !within[v]) covered = false;
    }
    json j;
    j["command"] = "cover";
    j["seed"] = 0;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["center"] = center;
    j["radius"] = radius;
    json list = json::array();
    for (NodeId c : centers) list.push_back(c + 1);
    j["centers"] = list;
    j["center_count"] = centers.size();
    if (check) j["covers_19r_over_9"] = covered;
    std::cout << j.dump(2) << "\n";
    return (!check || covered) ? 0 : 2;
}

int run_alphacheck(const std::string& graph_path, const std::string& alpha_s,
                   const std::string& beta_s, unsigned threads) {
    WeightedGraph g = load_graph(graph_path);
    AlphaRelationReport rep = alpha_relation_check(g, parse_rat(alpha_s), parse_rat(beta_s),
                                                   threads);
    json j;
    j["command"] = "alphacheck";
    j["seed"] = 0;
    j["fingerprint"] = hex64(graph_fingerprint(g));
    j["alpha"] = rep.alpha.str();
    j["beta"] = rep.beta.str();
    j["gamma"] = rep.gamma.str();
    j["k_alpha"] = rep.k_alpha;
    j["k_beta"] = rep.k_beta;
    j["k_gamma"] = rep.k_gamma;
    j["ok"] = rep.ok;
    std::cout << j.dump(2) << "\n";
    return rep.ok ? 0 : 2;
}

int run_symcheck(const std::string& graph_path, uint64_t pairs, uint64_t seed) {
    WeightedGraph g = load_graph(graph_path);
    std::vector<std::pair<NodeId, NodeId>> sample;
    uint32_t n = g.node_count();
    if (pairs == 0) {
        for (NodeId u = 0; u < n; u++)
            for (NodeId v = u + 1; v < n; v++) sample.emplace_back(u, v);
    } else {
        for (uint64_t i = 0; i < pairs; i++)
            sample.emplace_back(static_cast<NodeId>(prf64(seed, 0xc1, i) % n),
                                static_cast<NodeId>(prf64(seed, 0xc2, i) % n));
    }
    SymmetryReport rep = verify_path_symmetry(g, sample);
    std::cout << rep.violations.size() << " violations / " << rep.pairs_checked << " pairs\n";
    for (auto [u, v] : rep.violations)
        std::cout << "  asymmetric pair (" << u + 1 << "," << v + 1 << ")\n";
    return rep.ok() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skeleton dimension, hub labelings, and packing experiments for road-style graphs"};
    app.require_subcommand(1);

    // stats
    StatsArgs stats;
    auto* cmd_stats = app.add_subcommand("stats", "skeleton widths and dimension of a graph");
    cmd_stats->add_option("graph", stats.graph_path, "DIMACS .gr file")->required();
    cmd_stats->add_option("--metric-file", stats.metric_files,
                          "attach extra metric, name=path of a .gr with equal topology");
    cmd_stats->add_option("--reach-metric", stats.reach_metric, "metric measuring reach");
    cmd_stats->add_option("--alpha", stats.alpha, "reach threshold p/q in (0,1], default 1/2");
    cmd_stats->add_option("--roots", stats.roots, "sample this many roots (0 = all)");
    cmd_stats->add_option("--seed", stats.seed, "sampling seed");
    cmd_stats->add_option("--threads", stats.threads, "worker threads (0 = auto)");
    cmd_stats->add_option("--isk-cutoff", stats.isk_cutoff,
                          "ignore cuts at twelfth-unit radii <= this");
    cmd_stats->add_option("-o,--out", stats.out_path, "write JSON here as well");

    // label
    auto* cmd_label = app.add_subcommand("label", "exact-distance hub labels");
    cmd_label->require_subcommand(1);
    std::string lb_graph, lb_out;
    uint64_t lb_seed = 0;
    unsigned lb_threads = 0;
    auto* cmd_lb = cmd_label->add_subcommand("build", "build labels for every node");
    cmd_lb->add_option("graph", lb_graph)->required();
    cmd_lb->add_option("--seed", lb_seed, "shared randomness seed");
    cmd_lb->add_option("-o,--out", lb_out, "label file")->required();
    cmd_lb->add_option("--threads", lb_threads);

    std::string lq_file;
    uint64_t lq_u = 0, lq_v = 0;
    auto* cmd_lq = cmd_label->add_subcommand("query", "decode one distance");
    cmd_lq->add_option("labels", lq_file)->required();
    cmd_lq->add_option("u", lq_u)->required();
    cmd_lq->add_option("v", lq_v)->required();

    std::string lv_graph, lv_file;
    bool lv_exhaustive = false;
    uint64_t lv_pairs = 10000, lv_seed = 0;
    auto* cmd_lv = cmd_label->add_subcommand("verify", "compare decoded distances with Dijkstra");
    cmd_lv->add_option("graph", lv_graph)->required();
    cmd_lv->add_option("labels", lv_file)->required();
    cmd_lv->add_flag("--exhaustive", lv_exhaustive, "all pairs");
    cmd_lv->add_option("--pairs", lv_pairs, "random pair count otherwise");
    cmd_lv->add_option("--seed", lv_seed);

    std::string ls_file;
    auto* cmd_ls = cmd_label->add_subcommand("stats", "hub set size distribution");
    cmd_ls->add_option("labels", ls_file)->required();

    // dpres
    auto* cmd_dp = app.add_subcommand("dpres", "distance labels exact above a threshold D");
    cmd_dp->require_subcommand(1);
    std::string db_graph, db_out;
    uint32_t db_D = 12;
    uint64_t db_seed = 0;
    unsigned db_threads = 0;
    auto* cmd_db = cmd_dp->add_subcommand("build", "build D-preserving labels");
    cmd_db->add_option("graph", db_graph)->required();
    cmd_db->add_option("--D", db_D, "distance threshold, >= 12")->required();
    cmd_db->add_option("--seed", db_seed);
    cmd_db->add_option("-o,--out", db_out)->required();
    cmd_db->add_option("--threads", db_threads);

    std::string dq_file;
    uint64_t dq_u = 0, dq_v = 0;
    auto* cmd_dq = cmd_dp->add_subcommand("query", "decode one distance");
    cmd_dq->add_option("labels", dq_file)->required();
    cmd_dq->add_option("u", dq_u)->required();
    cmd_dq->add_option("v", dq_v)->required();

    std::string dv_graph, dv_file;
    uint32_t dv_min = 0;
    bool dv_exhaustive = false;
    uint64_t dv_pairs = 10000, dv_seed = 0;
    auto* cmd_dv = cmd_dp->add_subcommand("verify", "check exactness at distance >= min-dist");
    cmd_dv->add_option("graph", dv_graph)->required();
    cmd_dv->add_option("labels", dv_file)->required();
    cmd_dv->add_option("--min-dist", dv_min, "defaults to the labeling's D");
    cmd_dv->add_flag("--exhaustive", dv_exhaustive);
    cmd_dv->add_option("--pairs", dv_pairs);
    cmd_dv->add_option("--seed", dv_seed);

    // gen grid
    auto* cmd_gen = app.add_subcommand("gen", "graph generators");
    cmd_gen->require_subcommand(1);
    uint32_t gg_L = 3;
    std::string gg_out;
    auto* cmd_gg = cmd_gen->add_subcommand("grid", "weighted grid with transit arteries");
    cmd_gg->add_option("--L", gg_L, "side is 2^L, 1 <= L <= 7")->required();
    cmd_gg->add_option("-o,--out", gg_out)->required();

    std::string cn_graph, cn_out;
    auto* cmd_cn = cmd_gen->add_subcommand("canon", "rewrite a graph in canonical arc order");
    cmd_cn->add_option("graph", cn_graph)->required();
    cmd_cn->add_option("-o,--out", cn_out)->required();

    // pack
    std::string pk_graph, pk_out;
    uint64_t pk_center = 1;
    uint64_t pk_radius = 1;
    PackingOptions pk_opt;
    BoxArgs pk_box;
    auto* cmd_pk = app.add_subcommand("pack", "vertex-disjoint shortest-path packing near a ball");
    cmd_pk->add_option("graph", pk_graph)->required();
    auto* pk_center_opt = cmd_pk->add_option("--center", pk_center, "1-based node id");
    cmd_pk->add_option("--radius", pk_radius)->required();
    auto* pk_co = cmd_pk->add_option("--co", pk_box.co_path,
                                     "coordinate file; try centers inside --bbox instead");
    cmd_pk->add_option("--bbox", pk_box.bbox, "x1,y1,x2,y2 in coordinate units")
        ->delimiter(',')
        ->needs(pk_co);
    cmd_pk->add_option("--centers", pk_box.centers, "candidate centers tried in the box");
    pk_center_opt->excludes(pk_co);
    cmd_pk->add_option("--budget", pk_opt.budget, "randomized greedy restarts");
    cmd_pk->add_option("--sources", pk_opt.max_sources, "sampled source trees");
    cmd_pk->add_option("--seed", pk_opt.seed);
    cmd_pk->add_option("-o,--out", pk_out, "write chosen paths, one per line");

    // study
    auto* cmd_study = app.add_subcommand("study", "batch experiments");
    cmd_study->require_subcommand(1);
    uint32_t ss_lmin = 2, ss_lmax = 5;
    unsigned ss_threads = 0;
    PackingOptions ss_opt;
    std::string ss_out;
    auto* cmd_ss = cmd_study->add_subcommand(
        "separation", "exact dimension vs packing lower bound on the grid family");
    cmd_ss->add_option("--Lmin", ss_lmin)->required();
    cmd_ss->add_option("--Lmax", ss_lmax)->required();
    cmd_ss->add_option("--budget", ss_opt.budget);
    cmd_ss->add_option("--seed", ss_opt.seed);
    cmd_ss->add_option("--threads", ss_threads);
    cmd_ss->add_option("-o,--out", ss_out, "CSV output (columns L,n,k,pack_lb)");

    NyArgs ny;
    auto* cmd_ny = cmd_study->add_subcommand(
        "ny", "skeleton dimension of a continental road graph; sampled by default, "
              "--full visits every root and runs for hours");
    cmd_ny->add_option("--graph", ny.graph_path)->required();
    cmd_ny->add_option("--second", ny.second, "extra metric, name=path");
    cmd_ny->add_option("--reach-metric", ny.reach_metric);
    cmd_ny->add_flag("--full", ny.full, "all roots (exact, hours-scale)");
    cmd_ny->add_option("--roots", ny.roots, "sample size when not --full");
    cmd_ny->add_option("--seed", ny.seed);
    cmd_ny->add_option("--threads", ny.threads);

    // cover / alphacheck / symcheck
    std::string cv_graph;
    uint64_t cv_center = 1, cv_radius = 1;
    bool cv_check = false;
    auto* cmd_cv = app.add_subcommand("cover", "doubling-style ball cover from the skeleton");
    cmd_cv->add_option("graph", cv_graph)->required();
    cmd_cv->add_option("--center", cv_center)->required();
    cmd_cv->add_option("--radius", cv_radius)->required();
    cmd_cv->add_flag("--check", cv_check, "verify the cover exhaustively");

    std::string ac_graph, ac_alpha = "1/3", ac_beta = "1/2";
    unsigned ac_threads = 0;
    auto* cmd_ac = app.add_subcommand("alphacheck", "cross-threshold width inequalities");
    cmd_ac->add_option("graph", ac_graph)->required();
    cmd_ac->add_option("--alpha", ac_alpha)->required();
    cmd_ac->add_option("--beta", ac_beta)->required();
    cmd_ac->add_option("--threads", ac_threads);

    std::string sy_graph;
    uint64_t sy_pairs = 0, sy_seed = 0;
    auto* cmd_sy = app.add_subcommand("symcheck", "tree-path symmetry gate");
    cmd_sy->add_option("graph", sy_graph)->required();
    cmd_sy->add_option("--pairs", sy_pairs, "random pairs (0 = all pairs)");
    cmd_sy->add_option("--seed", sy_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cmd_stats->parsed()) return run_stats(stats);
        if (cmd_lb->parsed()) return run_label_build(lb_graph, lb_seed, lb_out, lb_threads);
        if (cmd_lq->parsed()) return run_label_query(lq_file, lq_u, lq_v);
        if (cmd_lv->parsed())
            return run_label_verify(lv_graph, lv_file, lv_exhaustive, lv_pairs, lv_seed);
        if (cmd_ls->parsed()) return run_label_stats(ls_file);
        if (cmd_db->parsed()) return run_dpres_build(db_graph, db_D, db_seed, db_out, db_threads);
        if (cmd_dq->parsed()) return run_dpres_query(dq_file, dq_u, dq_v);
        if (cmd_dv->parsed())
            return run_dpres_verify(dv_graph, dv_file, dv_min, dv_exhaustive, dv_pairs, dv_seed);
        if (cmd_gg->parsed()) return run_gen_grid(gg_L, gg_out);
        if (cmd_cn->parsed()) return run_canon(cn_graph, cn_out);
        if (cmd_pk->parsed()) {
            if (pk_box.co_path.empty() && pk_center_opt->count() == 0)
                throw ParamError("pack needs --center or --co/--bbox");
            return run_pack(pk_graph, pk_center, pk_radius, pk_opt, pk_out, pk_box);
        }
        if (cmd_ss->parsed())
            return run_study_separation(ss_lmin, ss_lmax, ss_opt, ss_threads, ss_out);
        if (cmd_ny->parsed()) return run_study_ny(ny);
        if (cmd_cv->parsed()) return run_cover(cv_graph, cv_center, cv_radius, cv_check);
        if (cmd_ac->parsed()) return run_alphacheck(ac_graph, ac_alpha, ac_beta, ac_threads);
        if (cmd_sy->parsed()) return run_symcheck(sy_graph, sy_pairs, sy_seed);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const VerifyError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
