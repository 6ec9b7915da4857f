#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "skeledim/hub_labeling.hpp"
#include "skeledim/skeleton.hpp"
#include "support/testutil.hpp"

using namespace skeledim;
using namespace skeledim::test;

namespace {

// per-target enumeration, the reference for the sliding-window scan
HubSet naive_hub_set(const WeightedGraph& g, const RhoModel& rho, const ShortestPathTree& t) {
    std::set<EdgeId> hubs;
    for (NodeId v = 0; v < g.node_count(); v++)
        if (v != t.root) hubs.insert(hub_edge(g, rho, t, v));
    HubSet out;
    out.owner = t.root;
    for (EdgeId e : hubs) {
        const Edge& ed = g.edge(e);
        out.hubs.push_back({ed.u, ed.v, 12 * t.dist[ed.u], 12 * t.dist[ed.v]});
    }
    std::sort(out.hubs.begin(), out.hubs.end(), [](const HubEntry& x, const HubEntry& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

std::string serialize(const Labeling& l) {
    std::ostringstream os;
    write_labeling(l, os);
    return os.str();
}

}  // namespace

TEST_SUITE_BEGIN("hub_labeling");

TEST_CASE("two-node graph stores the only edge on both sides") {
    WeightedGraph g = make_path(2, 3);
    Labeling l = build_labeling(g, 1);
    for (NodeId u : {0u, 1u}) {
        REQUIRE(l.sets[u].hubs.size() == 1);
        CHECK(l.sets[u].hubs[0].a == 0);
        CHECK(l.sets[u].hubs[0].b == 1);
    }
    CHECK(query(l, 0, 1) == 3);
}

TEST_CASE("star center keeps exactly its incident edges") {
    WeightedGraph g = make_star(3);
    RhoModel rho(g, 5);
    ShortestPathTree t = build_shortest_path_tree(g, 0);
    HubSet s = build_hub_set(g, rho, t);
    CHECK(s.hubs.size() == 3);  // every window sits inside a single arm
    for (const HubEntry& h : s.hubs) CHECK(h.a == 0);
}

TEST_CASE("hub edge is symmetric in its endpoints") {
    for (uint64_t seed = 0; seed < 100; seed++) {
        uint32_t n = 6 + static_cast<uint32_t>(prf64(seed, 0, 1) % 14);
        WeightedGraph g = random_connected(n, n / 2, 7, 2000 + seed);
        RhoModel rho(g, seed);
        std::vector<ShortestPathTree> trees;
        for (NodeId u = 0; u < n; u++) trees.push_back(build_shortest_path_tree(g, u));
        for (NodeId u = 0; u < n; u++)
            for (NodeId v = u + 1; v < n; v++)
                REQUIRE_MESSAGE(hub_edge(g, rho, trees[u], v) == hub_edge(g, rho, trees[v], u),
                                "seed ", seed, " pair ", u, ",", v);
    }
}

TEST_CASE("hub edge agrees with a fully materialized rho assignment") {
    for (uint64_t seed = 0; seed < 20; seed++) {
        WeightedGraph g = random_connected(12, 6, 5, 3000 + seed);
        REQUIRE(g.total_length(WeightedGraph::BASE_METRIC) <= 500);
        RhoModel rho(g, seed);
        // explicit rho values for every virtual unit of every edge
        std::vector<std::vector<double>> values(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); e++)
            values[e] = materialize_chain(rho.chain(e), seed ^ (0x77ULL + e));
        for (NodeId u = 0; u < g.node_count(); u++) {
            ShortestPathTree t = build_shortest_path_tree(g, u);
            for (NodeId v = 0; v < g.node_count(); v++) {
                if (u == v) continue;
                // walk the path, find the argmin over the central window
                std::vector<EdgeId> path = tree_path_edges(t, v);
                NodeId at = u;
                uint64_t pos = 0;
                Dist d = t.dist[v];
                uint64_t wlo = 5 * d + 1, whi = 7 * d;
                double best = 2.0;
                EdgeId best_edge = NO_EDGE;
                for (EdgeId e : path) {
                    const Edge& ed = g.edge(e);
                    bool fwd = ed.u == at;
                    uint64_t len = 12ull * g.edge_length(0, e);
                    for (uint64_t i = 1; i <= len; i++) {
                        uint64_t global = pos + i;
                        if (global < wlo || global > whi) continue;
                        uint64_t canon = fwd ? i : len - i + 1;
                        if (values[e][canon] < best) {
                            best = values[e][canon];
                            best_edge = e;
                        }
                    }
                    pos += len;
                    at = fwd ? ed.v : ed.u;
                }
                REQUIRE_MESSAGE(hub_edge(g, rho, t, v) == best_edge, "seed ", seed, " pair ", u,
                                ",", v);
            }
        }
    }
}

TEST_CASE("window scan equals the per-target enumeration") {
    for (uint64_t seed = 0; seed < 40; seed++) {
        uint32_t n = 10 + static_cast<uint32_t>(prf64(seed, 0, 2) % 60);
        WeightedGraph g = random_connected(n, n / 3, 9, 4000 + seed);
        RhoModel rho(g, seed * 31);
        for (NodeId u = 0; u < n; u += 1 + n / 7) {
            ShortestPathTree t = build_shortest_path_tree(g, u);
            HubSet scan = build_hub_set(g, rho, t);
            HubSet naive = naive_hub_set(g, rho, t);
            REQUIRE_MESSAGE(scan.hubs.size() == naive.hubs.size(), "seed ", seed, " root ", u);
            for (size_t i = 0; i < scan.hubs.size(); i++) REQUIRE(scan.hubs[i] == naive.hubs[i]);
        }
    }
}

TEST_CASE("scan matches enumeration under adversarial shapes and weights") {
    std::vector<WeightedGraph> shapes;
    // broom: long handle, many short bristles
    {
        std::vector<Edge> edges;
        std::vector<uint32_t> lengths;
        for (NodeId i = 0; i + 1 < 40; i++) {
            edges.push_back({i, i + 1});
            lengths.push_back(17);
        }
        for (NodeId leaf = 40; leaf < 70; leaf++) {
            edges.push_back({39, leaf});
            lengths.push_back(1);
        }
        shapes.emplace_back(70, std::move(edges), std::move(lengths));
    }
    // star of long arms with skewed weights
    {
        std::vector<Edge> edges;
        std::vector<uint32_t> lengths;
        NodeId next = 1;
        for (int arm = 0; arm < 5; arm++) {
            NodeId prev = 0;
            for (int step = 0; step < 8; step++) {
                edges.push_back({prev, next});
                lengths.push_back(step % 2 == 0 ? 500 : 1);
                prev = next++;
            }
        }
        shapes.emplace_back(next, std::move(edges), std::move(lengths));
    }
    // heavier random case
    shapes.push_back(random_connected(150, 100, 20, 31337));
    for (size_t si = 0; si < shapes.size(); si++) {
        const WeightedGraph& g = shapes[si];
        RhoModel rho(g, 77 + si);
        for (NodeId u = 0; u < g.node_count(); u += 9) {
            ShortestPathTree t = build_shortest_path_tree(g, u);
            HubSet scan = build_hub_set(g, rho, t);
            HubSet naive = naive_hub_set(g, rho, t);
            REQUIRE_MESSAGE(scan.hubs.size() == naive.hubs.size(), "shape ", si, " root ", u);
            for (size_t i = 0; i < scan.hubs.size(); i++) REQUIRE(scan.hubs[i] == naive.hubs[i]);
        }
        Labeling l = build_labeling(g, 123 + si, 4);
        CHECK(verify_labeling(g, l, true).ok());
    }
}

TEST_CASE("every hub lies on the owner's tree with matching distances") {
    WeightedGraph g = random_connected(60, 40, 8, 4321);
    RhoModel rho(g, 9);
    for (NodeId u = 0; u < g.node_count(); u += 11) {
        ShortestPathTree t = build_shortest_path_tree(g, u);
        HubSet s = build_hub_set(g, rho, t);
        for (const HubEntry& h : s.hubs) {
            EdgeId e = g.find_edge(h.a, h.b);
            REQUIRE(e != NO_EDGE);
            // a tree edge: one endpoint is the other's parent
            bool tree_edge = t.parent[h.a] == h.b || t.parent[h.b] == h.a;
            CHECK(tree_edge);
            CHECK(h.da == 12 * t.dist[h.a]);
            CHECK(h.db == 12 * t.dist[h.b]);
        }
    }
}

TEST_CASE("query basics") {
    WeightedGraph g = make_path(3);
    Labeling l = build_labeling(g, 2);
    CHECK(query(l, 0, 0) == 0);
    CHECK(query(l, 0, 2) == 2);
    CHECK(query(l, 2, 0) == 2);
}

TEST_CASE("exhaustive decode equals Dijkstra and shares a path edge") {
    for (uint64_t seed = 0; seed < 25; seed++) {
        uint32_t n = 20 + static_cast<uint32_t>(prf64(seed, 0, 3) % 80);
        WeightedGraph g = random_connected(n, n / 2, 11, 5000 + seed);
        Labeling l = build_labeling(g, seed);
        auto oracle = all_pairs(g);
        std::vector<ShortestPathTree> trees;
        for (NodeId u = 0; u < n; u++) trees.push_back(build_shortest_path_tree(g, u));
        for (NodeId u = 0; u < n; u++) {
            for (NodeId v = u + 1; v < n; v++) {
                REQUIRE_MESSAGE(query(l, u, v) == oracle[u][v], "seed ", seed);
                // cover property: some shared hub is an edge of the u-v path
                std::set<std::pair<NodeId, NodeId>> path_edges;
                for (EdgeId e : tree_path_edges(trees[u], v))
                    path_edges.insert({g.edge(e).u, g.edge(e).v});
                bool on_path = false;
                size_t i = 0, j = 0;
                const auto& a = l.sets[u].hubs;
                const auto& b = l.sets[v].hubs;
                while (i < a.size() && j < b.size()) {
                    auto ka = std::make_pair(a[i].a, a[i].b);
                    auto kb = std::make_pair(b[j].a, b[j].b);
                    if (ka < kb)
                        i++;
                    else if (kb < ka)
                        j++;
                    else {
                        // candidate soundness: never below the true distance
                        Dist cand = std::min(a[i].da + b[j].da, a[i].db + b[j].db);
                        REQUIRE(cand >= 12 * oracle[u][v]);
                        if (path_edges.count(ka)) on_path = true;
                        i++;
                        j++;
                    }
                }
                REQUIRE_MESSAGE(on_path, "no shared path edge, seed ", seed);
            }
        }
    }
}

TEST_CASE("empty intersection is a corruption error") {
    WeightedGraph g = make_path(3);
    Labeling l = build_labeling(g, 2);
    l.sets[0].hubs.clear();
    CHECK_THROWS_AS(query(l, 0, 2), VerifyError);
}

TEST_CASE("builds are deterministic and parallel-identical") {
    WeightedGraph g = random_connected(90, 60, 9, 1717);
    Labeling a = build_labeling(g, 5, 1);
    Labeling b = build_labeling(g, 5, 1);
    Labeling c = build_labeling(g, 5, 4);
    CHECK(serialize(a) == serialize(b));
    CHECK(serialize(a) == serialize(c));
    Labeling d = build_labeling(g, 6, 1);
    CHECK(serialize(a) != serialize(d));
}

TEST_CASE("labeling file round-trip") {
    WeightedGraph g = random_connected(30, 15, 6, 88);
    Labeling l = build_labeling(g, 3);
    std::string text = serialize(l);
    std::istringstream in(text);
    Labeling back = read_labeling(in);
    CHECK(serialize(back) == text);
    CHECK(back.fingerprint == graph_fingerprint(g));

    std::istringstream bad("HUBLABELS 2 n=3\n");
    CHECK_THROWS_AS(read_labeling(bad), ParseError);
}

TEST_CASE("mean hub size stays under sixteen times the integrated dimension") {
    for (uint64_t gseed : {1, 2, 3}) {
        WeightedGraph g = random_connected(80, 50, 9, 6000 + gseed);
        double isk_sum = 0;
        for (NodeId u = 0; u < g.node_count(); u++) {
            ShortestPathTree t = build_shortest_path_tree(g, u);
            isk_sum += integrated_skeleton_dimension(compute_skeleton(g, t, 0, Rat(1, 2)));
        }
        double isk_mean = isk_sum / g.node_count();
        double size_sum = 0;
        const int seeds = 5;
        for (int s = 0; s < seeds; s++) {
            Labeling l = build_labeling(g, 100 + s);
            size_sum += label_size_stats(l).mean;
        }
        double size_mean = size_sum / seeds;
        CHECK(size_mean <= 16.0 * isk_mean * 1.1);
    }
}

TEST_CASE("mean hub size grows with the log of the cycle diameter") {
    std::vector<double> log_diam, mean_size;
    for (uint32_t n : {64u, 128u, 256u, 512u}) {
        WeightedGraph g = make_cycle(n);
        Labeling l = build_labeling(g, 11, 4);
        log_diam.push_back(std::log(static_cast<double>(n / 2)));
        mean_size.push_back(label_size_stats(l).mean);
    }
    LinFit fit = linear_fit(log_diam, mean_size);
    CHECK(fit.r2 >= 0.9);
    CHECK(fit.slope > 0);
    for (size_t i = 0; i < log_diam.size(); i++) {
        double predicted = fit.slope * log_diam[i] + fit.intercept;
        CHECK(std::abs(predicted - mean_size[i]) <= 0.25 * mean_size[i]);
    }
}

TEST_SUITE_END();
