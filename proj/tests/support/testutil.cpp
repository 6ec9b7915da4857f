#include "testutil.hpp"

#include <algorithm>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <set>

using namespace std;

namespace skeledim::test {

WeightedGraph make_path(uint32_t n, uint32_t len) {
    vector<Edge> edges;
    vector<uint32_t> lengths;
    for (uint32_t i = 0; i + 1 < n; i++) {
        edges.push_back({i, i + 1});
        lengths.push_back(len);
    }
    return WeightedGraph(n, move(edges), move(lengths));
}

WeightedGraph make_cycle(uint32_t n, uint32_t len) {
    vector<Edge> edges;
    vector<uint32_t> lengths;
    for (uint32_t i = 0; i < n; i++) {
        edges.push_back({i, (i + 1) % n});
        lengths.push_back(len);
    }
    return WeightedGraph(n, move(edges), move(lengths));
}

WeightedGraph make_star(uint32_t leaves, uint32_t len) {
    vector<Edge> edges;
    vector<uint32_t> lengths;
    for (uint32_t i = 1; i <= leaves; i++) {
        edges.push_back({0, i});
        lengths.push_back(len);
    }
    return WeightedGraph(leaves + 1, move(edges), move(lengths));
}

WeightedGraph make_grid(uint32_t w, uint32_t h) {
    auto id = [&](uint32_t x, uint32_t y) { return y * w + x; };
    vector<Edge> edges;
    for (uint32_t y = 0; y < h; y++)
        for (uint32_t x = 0; x < w; x++) {
            if (x + 1 < w) edges.push_back({id(x, y), id(x + 1, y)});
            if (y + 1 < h) edges.push_back({id(x, y), id(x, y + 1)});
        }
    vector<uint32_t> lengths(edges.size(), 1);
    return WeightedGraph(w * h, move(edges), move(lengths));
}

WeightedGraph random_connected(uint32_t n, uint32_t extra, uint32_t max_len, uint64_t seed) {
    vector<Edge> edges;
    vector<uint32_t> lengths;
    set<pair<NodeId, NodeId>> present;
    auto add = [&](NodeId a, NodeId b, uint32_t len) {
        if (a == b) return false;
        if (a > b) swap(a, b);
        if (!present.insert({a, b}).second) return false;
        edges.push_back({a, b});
        lengths.push_back(len);
        return true;
    };
    for (NodeId v = 1; v < n; v++) {
        NodeId p = static_cast<NodeId>(prf64(seed, 0x11, v) % v);
        add(p, v, 1 + static_cast<uint32_t>(prf64(seed, 0x12, v) % max_len));
    }
    uint64_t tries = 0;
    uint32_t added = 0;
    while (added < extra && tries < 20ull * extra + 100) {
        NodeId a = static_cast<NodeId>(prf64(seed, 0x13, tries) % n);
        NodeId b = static_cast<NodeId>(prf64(seed, 0x14, tries) % n);
        uint32_t len = 1 + static_cast<uint32_t>(prf64(seed, 0x15, tries) % max_len);
        if (add(a, b, len)) added++;
        tries++;
    }
    return WeightedGraph(n, move(edges), move(lengths));
}

WeightedGraph random_caterpillar(uint32_t n, uint32_t chords, uint64_t seed) {
    vector<Edge> edges;
    set<pair<NodeId, NodeId>> present;
    auto add = [&](NodeId a, NodeId b) {
        if (a == b) return;
        if (a > b) swap(a, b);
        if (present.insert({a, b}).second) edges.push_back({a, b});
    };
    uint32_t spine = max<uint32_t>(2, (2 * n) / 3);
    for (uint32_t i = 0; i + 1 < spine; i++) add(i, i + 1);
    for (uint32_t v = spine; v < n; v++)
        add(static_cast<NodeId>(prf64(seed, 0x21, v) % spine), v);
    for (uint32_t c = 0; c < chords; c++) {
        NodeId a = static_cast<NodeId>(prf64(seed, 0x22, c) % n);
        // short chords keep the diameter long
        NodeId b = static_cast<NodeId>(min<uint64_t>(n - 1, a + 2 + prf64(seed, 0x23, c) % 6));
        add(a, b);
    }
    vector<uint32_t> lengths(edges.size(), 1);
    return WeightedGraph(n, move(edges), move(lengths));
}

//--------------------------- oracles -------------------------------

vector<vector<Dist>> all_pairs(const WeightedGraph& g, int metric) {
    vector<vector<Dist>> d(g.node_count());
    for (NodeId u = 0; u < g.node_count(); u++) d[u] = dijkstra_distances(g, u, metric);
    return d;
}

Dist eccentricity(const WeightedGraph& g, NodeId u, int metric) {
    vector<Dist> d = dijkstra_distances(g, u, metric);
    Dist ecc = 0;
    for (Dist x : d) ecc = max(ecc, x);
    return ecc;
}

double SubdividedSkeleton::isk(uint64_t cutoff_twelfths) const {
    double s = 0;
    for (uint64_t d = cut_at_depth.size(); d-- > 1;)
        if (d > cutoff_twelfths) s += static_cast<double>(cut_at_depth[d]) / static_cast<double>(d);
    return s;
}

// Explicit 12x subdivision: every tree edge becomes a chain of unit
// grid points. Reach of a grid point at offset t into edge (v,w) is
// (len - t) + reach(w); the point is kept while q*reach >= p*depth.
SubdividedSkeleton subdivide_skeleton(const WeightedGraph& g, const ShortestPathTree& t,
                                      int reach_metric, Rat alpha) {
    vector<Dist> dist = tree_distances(g, t, reach_metric);
    vector<Dist> reach = tree_reach(g, t, reach_metric);
    uint64_t depth_limit = 0;
    for (NodeId v = 0; v < g.node_count(); v++) depth_limit = max(depth_limit, 12 * dist[v]);
    SubdividedSkeleton out;
    out.cut_at_depth.assign(depth_limit + 2, 0);
    const int64_t p = alpha.num, q = alpha.den;

    for (NodeId w = 0; w < g.node_count(); w++) {
        NodeId v = t.parent[w];
        if (v == NO_NODE) continue;
        uint64_t len12 = 12ull * g.edge_length(reach_metric, t.parent_edge[w]);
        uint64_t base = 12 * dist[v];
        uint64_t reach_w12 = 12 * reach[w];
        for (uint64_t i = 1; i <= len12; i++) {
            uint64_t depth = base + i;
            uint64_t point_reach = (len12 - i) + reach_w12;
            if (static_cast<__int128>(point_reach) * q >= static_cast<__int128>(depth) * p)
                out.cut_at_depth[depth]++;
        }
    }
    for (uint64_t d = 1; d < out.cut_at_depth.size(); d++)
        out.width = max<uint32_t>(out.width, static_cast<uint32_t>(out.cut_at_depth[d]));
    return out;
}

// Non-chain positions are conditioned only to not create new minima:
// left of the global minimum a value must stay above the running prefix
// minimum, right of it above the next suffix minimum; both reduce to
// "uniform above the tighter chain bound".
vector<double> materialize_chain(const MinimaChain& chain, uint64_t fill_seed) {
    vector<double> values(chain.length + 1, 0.0);  // 1-based
    vector<double> lower(chain.length + 1, 0.0);
    double run = 1.0;
    size_t ci = 0;
    for (uint32_t pos = 1; pos <= chain.length; pos++) {  // prefix bound
        if (ci < chain.entries.size() && chain.entries[ci].pos == pos &&
            chain.entries[ci].kind != MinKind::Suffix) {
            run = chain.entries[ci].value;
        }
        while (ci < chain.entries.size() && chain.entries[ci].pos <= pos) ci++;
        lower[pos] = run;
    }
    double run_s = 1.0;
    size_t si = chain.entries.size();
    for (uint32_t pos = chain.length; pos >= 1; pos--) {  // suffix bound
        while (si > 0 && chain.entries[si - 1].pos >= pos) {
            si--;
            if (chain.entries[si].kind != MinKind::Prefix) run_s = chain.entries[si].value;
        }
        lower[pos] = max(lower[pos], run_s);
        if (pos == 1) break;
    }
    // chain values verbatim, everything else uniform above its bound
    size_t k = 0;
    for (uint32_t pos = 1; pos <= chain.length; pos++) {
        if (k < chain.entries.size() && chain.entries[k].pos == pos) {
            values[pos] = chain.entries[k].value;
            k++;
        } else {
            double u = unit_open(prf64(fill_seed, 0x66696c6cULL, pos));
            values[pos] = lower[pos] + (1.0 - lower[pos]) * u;
        }
    }
    return values;
}

vector<uint32_t> minima_positions(const vector<double>& values) {
    vector<uint32_t> out;
    uint32_t n = static_cast<uint32_t>(values.size()) - 1;
    double best = 2.0;
    for (uint32_t i = 1; i <= n; i++)
        if (values[i] < best) {
            best = values[i];
            out.push_back(i);
        }
    double best_s = 2.0;
    vector<uint32_t> suffix;
    for (uint32_t i = n; i >= 1; i--) {
        if (values[i] < best_s) {
            best_s = values[i];
            suffix.push_back(i);
        }
        if (i == 1) break;
    }
    for (size_t i = suffix.size(); i-- > 0;)
        if (find(out.begin(), out.end(), suffix[i]) == out.end()) out.push_back(suffix[i]);
    sort(out.begin(), out.end());
    return out;
}

LinFit linear_fit(const vector<double>& x, const vector<double>& y) {
    LinFit f;
    size_t n = x.size();
    if (n < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; i++) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double dn = static_cast<double>(n);
    double cov = sxy - sx * sy / dn;
    double varx = sxx - sx * sx / dn;
    double vary = syy - sy * sy / dn;
    f.slope = cov / varx;
    f.intercept = (sy - f.slope * sx) / dn;
    f.r2 = vary > 0 ? (cov * cov) / (varx * vary) : 1.0;
    return f;
}

string write_temp_file(const string& name_hint, const string& contents) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "skeledim_tests";
    fs::create_directories(dir);
    static int counter = 0;
    fs::path p = dir / (name_hint + "." + to_string(getpid()) + "." + to_string(counter++));
    ofstream out(p);
    out << contents;
    return p.string();
}

}  // namespace skeledim::test
