#include "skeledim/packing.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "skeledim/grid.hpp"
#include "skeledim/skeleton.hpp"
#include "skeledim/sptree.hpp"

using namespace std;

namespace skeledim {

namespace {

struct Candidate {
    vector<NodeId> nodes;
    Dist length;
};

// candidates from one source tree: for each node y, the longest
// descending subpath ending at y with length in (r/2, r] that meets the
// ball, plus the shortest such subpath (shorter pieces pack denser)
void collect_candidates(const ShortestPathTree& t, const vector<Dist>& dist_from_center,
                        Dist r, uint32_t cap, vector<Candidate>& out) {
    struct Frame {
        NodeId node;
        uint32_t child_cursor;
        size_t anchor;  // index into the path stack of the window start
    };
    vector<Frame> stack;
    vector<NodeId> path_nodes;
    vector<Dist> path_dist;
    vector<size_t> last_ball;  // deepest in-ball index among path[0..i], or npos
    constexpr size_t npos = SIZE_MAX;
    uint32_t taken = 0;

    auto in_ball = [&](NodeId v) { return dist_from_center[v] <= r; };
    auto emit = [&](size_t anchor, Dist len) {
        out.push_back({vector<NodeId>(path_nodes.begin() + anchor, path_nodes.end()), len});
        taken++;
    };

    stack.push_back({t.root, t.child_begin(t.root), 0});
    path_nodes.push_back(t.root);
    path_dist.push_back(0);
    last_ball.push_back(in_ball(t.root) ? 0 : npos);

    while (!stack.empty() && taken < cap) {
        Frame& f = stack.back();
        if (f.child_cursor >= t.child_end(f.node)) {
            stack.pop_back();
            path_nodes.pop_back();
            path_dist.pop_back();
            last_ball.pop_back();
            continue;
        }
        NodeId w = t.child_node[f.child_cursor++];
        Dist dw = t.dist[w];

        size_t anchor = f.anchor;
        while (dw - path_dist[anchor] > r) anchor++;

        path_nodes.push_back(w);
        path_dist.push_back(dw);
        last_ball.push_back(in_ball(w) ? path_nodes.size() - 1 : last_ball.back());
        stack.push_back({w, t.child_begin(w), anchor});

        size_t here = path_nodes.size() - 1;
        Dist len = dw - path_dist[anchor];
        if (2 * len > r && last_ball[here] != npos && last_ball[here] >= anchor) {
            emit(anchor, len);
            // deepest anchor still longer than r/2 and still touching
            size_t lo = anchor, hi_bound = min(here - 1, last_ball[here]);
            while (lo < hi_bound) {  // binary search on 2*(dw - dist) > r
                size_t mid = (lo + hi_bound + 1) / 2;
                if (2 * (dw - path_dist[mid]) > r)
                    lo = mid;
                else
                    hi_bound = mid - 1;
            }
            if (lo > anchor) emit(lo, dw - path_dist[lo]);
        }
    }
}

}  // namespace

PackingResult pack_paths(const WeightedGraph& g, NodeId center, Dist radius,
                         const PackingOptions& opt) {
    if (center >= g.node_count()) throw ParamError("packing center out of range");
    if (radius < 1) throw ParamError("packing radius must be >= 1");

    vector<Dist> dist_from_center = dijkstra_distances(g, center);

    // sources: every possible left endpoint of a qualifying path lies
    // within 2r of the center; evenly thinned to the cap
    vector<NodeId> sources;
    for (NodeId v = 0; v < g.node_count(); v++)
        if (dist_from_center[v] <= 2 * radius) sources.push_back(v);
    if (sources.size() > opt.max_sources) {
        vector<NodeId> thinned;
        double step = static_cast<double>(sources.size()) / opt.max_sources;
        for (uint32_t i = 0; i < opt.max_sources; i++)
            thinned.push_back(sources[static_cast<size_t>(i * step)]);
        sources = move(thinned);
    }

    // candidate pool, deduplicated by endpoints (shortest paths are unique)
    vector<Candidate> pool;
    {
        unordered_map<uint64_t, uint32_t> seen;
        for (NodeId s : sources) {
            ShortestPathTree t = build_shortest_path_tree(g, s);
            vector<Candidate> found;
            collect_candidates(t, dist_from_center, radius, opt.per_source_cap, found);
            for (Candidate& c : found) {
                NodeId a = min(c.nodes.front(), c.nodes.back());
                NodeId b = max(c.nodes.front(), c.nodes.back());
                uint64_t key = (static_cast<uint64_t>(a) << 32) | b;
                if (seen.emplace(key, 1).second) pool.push_back(move(c));
            }
        }
    }

    PackingResult best;
    best.center = center;
    best.radius = radius;

    vector<uint32_t> order(pool.size());
    for (uint32_t i = 0; i < order.size(); i++) order[i] = i;
    vector<char> used(g.node_count(), 0);

    for (uint32_t restart = 0; restart <= opt.budget; restart++) {
        if (restart == 0) {
            sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                if (pool[a].length != pool[b].length) return pool[a].length > pool[b].length;
                return pool[a].nodes.front() < pool[b].nodes.front();
            });
        } else if (restart == 1) {
            sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                if (pool[a].nodes.size() != pool[b].nodes.size())
                    return pool[a].nodes.size() < pool[b].nodes.size();
                return pool[a].nodes.front() < pool[b].nodes.front();
            });
        } else {
            sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                return prf64(opt.seed, restart, a) < prf64(opt.seed, restart, b);
            });
        }
        fill(used.begin(), used.end(), 0);
        vector<uint32_t> chosen;
        for (uint32_t idx : order) {
            const Candidate& c = pool[idx];
            bool free = true;
            for (NodeId v : c.nodes)
                if (used[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (NodeId v : c.nodes) used[v] = 1;
            chosen.push_back(idx);
        }
        if (chosen.size() > best.paths.size()) {
            best.paths.clear();
            for (uint32_t idx : chosen) best.paths.push_back(pool[idx].nodes);
        }
    }

    PackingCheck check = verify_packing(g, best);
    if (!check.ok()) throw VerifyError("packing failed its own verification");
    return best;
}

PackingCheck verify_packing(const WeightedGraph& g, const PackingResult& p) {
    PackingCheck c;
    c.disjoint = true;
    c.all_shortest = true;
    c.lengths_in_window = true;
    c.all_touch_ball = true;

    vector<char> used(g.node_count(), 0);
    vector<Dist> from_center = dijkstra_distances(g, p.center);

    for (const auto& nodes : p.paths) {
        if (nodes.size() < 2) {
            c.lengths_in_window = false;
            continue;
        }
        Dist len = 0;
        bool touches = false;
        for (size_t i = 0; i < nodes.size(); i++) {
            if (used[nodes[i]]) c.disjoint = false;
            used[nodes[i]] = 1;
            if (from_center[nodes[i]] <= p.radius) touches = true;
            if (i + 1 < nodes.size()) {
                EdgeId e = g.find_edge(nodes[i], nodes[i + 1]);
                if (e == NO_EDGE) {
                    c.all_shortest = false;
                    break;
                }
                len += g.edge_length(WeightedGraph::BASE_METRIC, e);
            }
        }
        if (!touches) c.all_touch_ball = false;
        if (!(2 * len > p.radius && len <= p.radius)) c.lengths_in_window = false;
        vector<Dist> d = dijkstra_distances(g, nodes.front(), WeightedGraph::BASE_METRIC, len);
        if (d[nodes.back()] != len) c.all_shortest = false;
    }
    return c;
}

Dist grid_corner_radius(uint32_t L) {
    // the corner ball that the side-length many full-row paths intersect:
    // each row has length just above half this radius
    GridSpec s = grid_spec(L);
    return s.Q * (s.D + 2) * L * s.side;
}

vector<SeparationRow> separation_study(uint32_t l_min, uint32_t l_max, const PackingOptions& opt,
                                       unsigned threads) {
    if (l_min < 2 || l_max > 6 || l_min > l_max)
        throw ParamError("separation study expects 2 <= Lmin <= Lmax <= 6");
    vector<SeparationRow> rows;
    for (uint32_t L = l_min; L <= l_max; L++) {
        WeightedGraph g = generate_grid(L);
        SeparationRow row;
        row.L = L;
        row.n = g.node_count();
        row.k = skeleton_dimension(g, RootSelection::all_roots(), WeightedGraph::BASE_METRIC,
                                   Rat(1, 2), threads)
                    .k;
        GridSpec spec = grid_spec(L);
        PackingResult pack = pack_paths(g, spec.node(1, 1), grid_corner_radius(L), opt);
        row.pack_lb = static_cast<uint32_t>(pack.size());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace skeledim
