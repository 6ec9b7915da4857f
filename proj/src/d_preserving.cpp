#include "skeledim/d_preserving.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

using namespace std;

namespace skeledim {

namespace {

void require_unit_lengths(const WeightedGraph& g) {
    for (uint32_t w : g.lengths(WeightedGraph::BASE_METRIC))
        if (w != 1) throw ParamError("operation requires unit edge lengths");
}

// range hub set from a prebuilt hop-metric tree
RangeHubSet range_hubs_from_tree(const WeightedGraph& g, const ShortestPathTree& t, uint32_t D,
                                 uint64_t seed) {
    RangeHubSet out;
    out.owner = t.root;
    out.scale = D;
    if (D < 12 || D % 12 != 0) throw ParamError("D must be a positive multiple of 12");

    const uint32_t n = g.node_count();
    const Dist lo = D, hi = 5ull * D / 4, trunc = 3ull * D / 4, win = D / 12;

    // tree restricted to root paths of targets in [D, 5D/4]
    vector<char> in_tree(n, 0);
    bool any = false;
    for (size_t i = t.order.size(); i-- > 0;) {
        NodeId v = t.order[i];
        if (t.dist[v] >= lo && t.dist[v] <= hi) in_tree[v] = 1;
        if (in_tree[v] && t.parent[v] != NO_NODE) in_tree[t.parent[v]] = 1;
        any = any || in_tree[v];
    }
    if (!any) return out;  // eccentricity below D

    // truncate to the first 3D/4 levels
    vector<char> in_star(n, 0);
    for (NodeId v = 0; v < n; v++) in_star[v] = in_tree[v] && t.dist[v] <= trunc;

    // leaves of the truncated tree all sit at level 3D/4; count them per subtree
    vector<uint32_t> leaf3(n, 0);
    for (size_t i = t.order.size(); i-- > 0;) {
        NodeId v = t.order[i];
        if (!in_star[v]) continue;
        if (t.dist[v] == trunc) leaf3[v] = 1;
        NodeId p = t.parent[v];
        if (p != NO_NODE) leaf3[p] += leaf3[v];
    }

    vector<char> heavy(n, 0);
    for (NodeId v = 0; v < n; v++) heavy[v] = in_star[v] && leaf3[v] >= D;

    // light components and their structural bounds: every component has
    // fewer than D last-level leaves and at most D * 3D/4 nodes
    {
        map<NodeId, pair<uint64_t, uint64_t>> comp;  // root -> (nodes, leaves)
        vector<NodeId> comp_of(n, NO_NODE);
        for (NodeId v : t.order) {
            if (!in_star[v] || heavy[v]) continue;
            NodeId p = t.parent[v];
            NodeId root = (p != NO_NODE && in_star[p] && !heavy[p]) ? comp_of[p] : v;
            comp_of[v] = root;
            auto& c = comp[root];
            c.first++;
            if (t.dist[v] == trunc) c.second++;
        }
        for (const auto& [root, c] : comp) {
            if (c.second >= D)
                throw VerifyError("light component with >= D last-level leaves");
            if (c.first > static_cast<uint64_t>(D) * trunc)
                throw VerifyError("light component larger than D * 3D/4 nodes");
        }
    }

    // light hubs: rho-minima of descending windows of D/12 edges whose
    // upper endpoint is light (light vertices are downward closed)
    vector<char> picked(n, 0);
    for (NodeId y = 0; y < n; y++) {
        if (!in_star[y] || t.dist[y] < win) continue;
        NodeId x = y;
        NodeId best = y;
        double best_rho = node_rho(seed, y);
        bool ok = true;
        for (Dist step = 0; step < win; step++) {
            x = t.parent[x];
            if (x == NO_NODE || !in_star[x]) {
                ok = false;
                break;
            }
            double r = node_rho(seed, x);
            if (r < best_rho || (r == best_rho && x < best)) {
                best_rho = r;
                best = x;
            }
        }
        if (ok && !heavy[x]) picked[best] = 1;
    }

    for (NodeId v = 0; v < n; v++) {
        if (heavy[v]) {
            out.hubs.push_back({v, static_cast<uint32_t>(t.dist[v])});
            out.heavy_count++;
        } else if (picked[v]) {
            out.hubs.push_back({v, static_cast<uint32_t>(t.dist[v])});
            out.light_count++;
        }
    }
    if (out.heavy_count > 3ull * n / D)
        throw VerifyError("heavy hub count exceeds 3n/D");
    return out;
}

}  // namespace

RangeHubSet build_range_hub_set(const WeightedGraph& g, NodeId u, uint32_t D, uint64_t seed) {
    require_unit_lengths(g);
    if (u >= g.node_count()) throw ParamError("owner out of range");
    ShortestPathTree t = build_shortest_path_tree(g, u, g.hop_metric());
    return range_hubs_from_tree(g, t, D, seed);
}

pair<vector<uint32_t>, uint32_t> d_scale_sequence(uint32_t D, uint32_t n) {
    if (D < 12) throw ParamError("D must be >= 12");
    uint32_t tail = 0;
    if (n >= 3) tail = static_cast<uint32_t>(floor(sqrt(static_cast<double>(n)) /
                                                   log(static_cast<double>(n))));
    uint32_t dmax = max(D, tail);

    vector<uint32_t> scales;
    uint32_t cur = 12 * (D / 12);
    while (cur < dmax) {
        scales.push_back(cur);
        uint32_t next = 12 * (((5ull * cur - 1) / 4) / 12);  // largest 12k < 5*cur/4
        if (next <= cur) next = cur + 12;  // the rule stalls below 60; step one grid unit
        cur = next;
    }

    // the ranges [D_i, 5 D_i / 4] must jointly cover every integer
    // distance in [D, dmax). Twelve-divisibility can make that impossible
    // (no multiple of 12 covers 16, say); the far-target scheme then takes
    // over from the first uncovered distance instead, trading label size
    // for the same correctness guarantee.
    uint64_t covered_to = D > 0 ? D - 1 : 0;  // highest covered integer so far
    size_t used = 0;
    for (uint32_t s : scales) {
        if (s > covered_to + 1 && s > D) break;
        covered_to = max<uint64_t>(covered_to, 5ull * s / 4);
        used++;
    }
    if (covered_to + 1 < dmax && D < dmax) {
        dmax = static_cast<uint32_t>(covered_to + 1);
        scales.resize(used);
        while (!scales.empty() && scales.back() >= dmax) scales.pop_back();
    }
    // scales whose whole range sits below D serve no queried distance
    erase_if(scales, [&](uint32_t s) { return 5ull * s / 4 < D; });
    return {scales, dmax};
}

DpLabeling build_d_preserving_labeling(const WeightedGraph& g, uint32_t D, uint64_t seed,
                                       unsigned threads) {
    require_unit_lengths(g);
    auto [scales, dmax] = d_scale_sequence(D, g.node_count());

    DpLabeling l;
    l.n = g.node_count();
    l.D = D;
    l.Dmax = dmax;
    l.seed = seed;
    l.fingerprint = graph_fingerprint(g);
    l.labels.resize(l.n);

    const int hop = g.hop_metric();
    RhoModel rho(g, seed, hop);
    const vector<uint32_t> scale_list = scales;
    parallel_for(l.n, threads, [&](size_t ui) {
        NodeId u = static_cast<NodeId>(ui);
        ShortestPathTree t = build_shortest_path_tree(g, u, hop);
        DpLabel& label = l.labels[ui];
        label.owner = u;

        map<NodeId, uint32_t> merged;
        for (uint32_t s : scale_list) {
            RangeHubSet r = range_hubs_from_tree(g, t, s, seed);
            for (const NodeHub& h : r.hubs) {
                auto [it, fresh] = merged.emplace(h.node, h.dist);
                assert(fresh || it->second == h.dist);
                (void)it;
            }
        }
        label.node_hubs.reserve(merged.size());
        for (auto [node, dist] : merged) label.node_hubs.push_back({node, dist});

        label.edge_hubs = build_hub_set(g, rho, t, dmax).hubs;
    });
    return l;
}

optional<uint32_t> query_d_preserving(const DpLabel& a, const DpLabel& b) {
    if (a.owner == b.owner) return 0;
    uint64_t best = UINT64_MAX;
    {
        size_t i = 0, j = 0;
        while (i < a.node_hubs.size() && j < b.node_hubs.size()) {
            if (a.node_hubs[i].node < b.node_hubs[j].node)
                i++;
            else if (b.node_hubs[j].node < a.node_hubs[i].node)
                j++;
            else {
                best = min(best, static_cast<uint64_t>(a.node_hubs[i].dist) + b.node_hubs[j].dist);
                i++;
                j++;
            }
        }
    }
    {
        size_t i = 0, j = 0;
        const auto& x = a.edge_hubs;
        const auto& y = b.edge_hubs;
        while (i < x.size() && j < y.size()) {
            auto ka = make_pair(x[i].a, x[i].b);
            auto kb = make_pair(y[j].a, y[j].b);
            if (ka < kb)
                i++;
            else if (kb < ka)
                j++;
            else {
                uint64_t cand = min(x[i].da + y[j].da, x[i].db + y[j].db);
                assert(cand % 12 == 0);
                best = min(best, cand / 12);
                i++;
                j++;
            }
        }
    }
    if (best == UINT64_MAX) return nullopt;
    return static_cast<uint32_t>(best);
}

//--------------------------- serialization -------------------------

void write_dp_labeling(const DpLabeling& l, ostream& out) {
    char fp[17];
    snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(l.fingerprint));
    out << "DPRESLABELS 1 n=" << l.n << " D=" << l.D << " Dmax=" << l.Dmax << " seed=" << l.seed
        << " fp=" << fp << "\n";
    for (NodeId u = 0; u < l.n; u++) {
        const DpLabel& lab = l.labels[u];
        out << "L " << u + 1 << " " << lab.node_hubs.size() << " " << lab.edge_hubs.size();
        for (const NodeHub& h : lab.node_hubs) out << " N " << h.node + 1 << " " << h.dist;
        for (const HubEntry& h : lab.edge_hubs)
            out << " E " << h.a + 1 << " " << h.b + 1 << " " << h.da << " " << h.db;
        out << "\n";
    }
}

DpLabeling read_dp_labeling(istream& in) {
    DpLabeling l;
    string line;
    if (!getline(in, line)) throw ParseError("empty label file", 1);
    try {
        istringstream hs(line);
        string magic, version, nf, df, dmf, sf, fpf;
        hs >> magic >> version >> nf >> df >> dmf >> sf >> fpf;
        if (!hs || magic != "DPRESLABELS" || version != "1" || nf.rfind("n=", 0) != 0 ||
            df.rfind("D=", 0) != 0 || dmf.rfind("Dmax=", 0) != 0 || sf.rfind("seed=", 0) != 0 ||
            fpf.rfind("fp=", 0) != 0)
            throw ParseError("bad label file header", 1);
        l.n = static_cast<uint32_t>(stoul(nf.substr(2)));
        l.D = static_cast<uint32_t>(stoul(df.substr(2)));
        l.Dmax = static_cast<uint32_t>(stoul(dmf.substr(5)));
        l.seed = stoull(sf.substr(5));
        l.fingerprint = stoull(fpf.substr(3), nullptr, 16);
    } catch (const logic_error&) {
        throw ParseError("bad label file header", 1);
    }
    l.labels.resize(l.n);
    for (NodeId u = 0; u < l.n; u++) {
        if (!getline(in, line)) throw ParseError("truncated label file", 2 + u);
        istringstream ls(line);
        string tag;
        uint64_t node, hn, he;
        ls >> tag >> node >> hn >> he;
        if (!ls || tag != "L" || node != u + 1) throw ParseError("bad label record", 2 + u);
        DpLabel& lab = l.labels[u];
        lab.owner = u;
        lab.node_hubs.resize(hn);
        for (uint64_t i = 0; i < hn; i++) {
            string kind;
            uint64_t w;
            ls >> kind >> w >> lab.node_hubs[i].dist;
            if (!ls || kind != "N" || w < 1 || w > l.n) throw ParseError("bad node hub", 2 + u);
            lab.node_hubs[i].node = static_cast<NodeId>(w - 1);
        }
        lab.edge_hubs.resize(he);
        for (uint64_t i = 0; i < he; i++) {
            string kind;
            uint64_t a, b;
            ls >> kind >> a >> b >> lab.edge_hubs[i].da >> lab.edge_hubs[i].db;
            if (!ls || kind != "E" || a < 1 || b < 1 || a > l.n || b > l.n || a >= b)
                throw ParseError("bad edge hub", 2 + u);
            lab.edge_hubs[i].a = static_cast<NodeId>(a - 1);
            lab.edge_hubs[i].b = static_cast<NodeId>(b - 1);
        }
    }
    return l;
}

DpVerifyReport verify_dp_labeling(const WeightedGraph& g, const DpLabeling& l, uint32_t min_dist,
                                  bool exhaustive, uint64_t pairs, uint64_t seed) {
    DpVerifyReport rep;
    uint32_t n = g.node_count();
    auto check = [&](NodeId u, NodeId v, const vector<Dist>& oracle) {
        optional<uint32_t> got = query_d_preserving(l.labels[u], l.labels[v]);
        Dist want = oracle[v];
        if (want >= min_dist) {
            rep.pairs++;
            if (!got || *got != want) {
                rep.mismatches++;
                if (rep.samples.size() < 16)
                    rep.samples.emplace_back(u, v, got ? static_cast<int64_t>(*got) : -1,
                                             static_cast<uint32_t>(want));
            }
        } else if (got && *got < want) {
            rep.unsound++;
            if (rep.samples.size() < 16)
                rep.samples.emplace_back(u, v, static_cast<int64_t>(*got),
                                         static_cast<uint32_t>(want));
        }
    };
    if (exhaustive) {
        for (NodeId u = 0; u < n; u++) {
            vector<Dist> oracle = dijkstra_distances(g, u, g.hop_metric());
            for (NodeId v = u; v < n; v++) check(u, v, oracle);
        }
        return rep;
    }
    vector<pair<NodeId, NodeId>> sample(pairs);
    for (uint64_t i = 0; i < pairs; i++)
        sample[i] = {static_cast<NodeId>(prf64(seed, 0xb1, i) % n),
                     static_cast<NodeId>(prf64(seed, 0xb2, i) % n)};
    sort(sample.begin(), sample.end());
    vector<Dist> oracle;
    NodeId current = NO_NODE;
    for (auto [u, v] : sample) {
        if (u != current) {
            oracle = dijkstra_distances(g, u, g.hop_metric());
            current = u;
        }
        check(u, v, oracle);
    }
    return rep;
}

}  // namespace skeledim
