#include "skeledim/sptree.hpp"

#include <algorithm>
#include <map>
#include <queue>

using namespace std;

namespace skeledim {

namespace {

using Key = unsigned __int128;

struct HeapItem {
    Dist dist;
    Key key;
    NodeId node;
    bool operator>(const HeapItem& o) const {
        if (dist != o.dist) return dist > o.dist;
        if (key != o.key) return key > o.key;
        return node > o.node;
    }
};

}  // namespace

ShortestPathTree build_shortest_path_tree(const WeightedGraph& g, NodeId root, int metric) {
    if (root >= g.node_count()) throw ParamError("tree root out of range");
    uint32_t n = g.node_count();

    ShortestPathTree t;
    t.root = root;
    t.metric = metric;
    t.parent.assign(n, NO_NODE);
    t.parent_edge.assign(n, NO_EDGE);
    t.dist.assign(n, INF_DIST);
    t.order.reserve(n);

    vector<Key> key(n, ~Key(0));
    vector<char> done(n, 0);
    priority_queue<HeapItem, vector<HeapItem>, greater<HeapItem>> pq;

    t.dist[root] = 0;
    key[root] = 0;
    pq.push({0, 0, root});

    while (!pq.empty()) {
        HeapItem top = pq.top();
        pq.pop();
        NodeId u = top.node;
        if (done[u] || top.dist != t.dist[u] || top.key != key[u]) continue;
        done[u] = 1;
        t.order.push_back(u);
        for (auto [e, v] : g.incident(u)) {
            if (done[v]) continue;
            Dist nd = t.dist[u] + g.edge_length(metric, e);
            Key nk = key[u] + edge_tiebreak_key(e);
            if (nd < t.dist[v]) {
                t.dist[v] = nd;
                key[v] = nk;
                t.parent[v] = u;
                t.parent_edge[v] = e;
                pq.push({nd, nk, v});
            } else if (nd == t.dist[v]) {
                t.base_ties++;
                if (nk < key[v] || (nk == key[v] && e < t.parent_edge[v])) {
                    key[v] = nk;
                    t.parent[v] = u;
                    t.parent_edge[v] = e;
                    pq.push({nd, nk, v});
                }
            }
        }
    }
    // graph is connected, so every node is reached
    assert(t.order.size() == n);

    // children CSR
    t.child_off.assign(n + 1, 0);
    for (NodeId v = 0; v < n; v++)
        if (t.parent[v] != NO_NODE) t.child_off[t.parent[v] + 1]++;
    for (uint32_t i = 0; i < n; i++) t.child_off[i + 1] += t.child_off[i];
    t.child_node.assign(n > 0 ? n - 1 : 0, NO_NODE);
    t.child_edge.assign(n > 0 ? n - 1 : 0, NO_EDGE);
    {
        vector<uint32_t> cursor(t.child_off.begin(), t.child_off.end() - 1);
        for (NodeId v : t.order) {  // children in pop order keeps scans deterministic
            NodeId p = t.parent[v];
            if (p == NO_NODE) continue;
            uint32_t slot = cursor[p]++;
            t.child_node[slot] = v;
            t.child_edge[slot] = t.parent_edge[v];
        }
    }

    // reach by a scan of vertices in reverse topological order
    t.reach.assign(n, 0);
    for (size_t i = t.order.size(); i-- > 0;) {
        NodeId v = t.order[i];
        NodeId p = t.parent[v];
        if (p == NO_NODE) continue;
        Dist through = t.reach[v] + g.edge_length(metric, t.parent_edge[v]);
        if (through > t.reach[p]) t.reach[p] = through;
    }
    return t;
}

vector<Dist> tree_distances(const WeightedGraph& g, const ShortestPathTree& t, int metric) {
    vector<Dist> d(g.node_count(), 0);
    for (NodeId v : t.order) {
        if (t.parent[v] == NO_NODE) continue;
        d[v] = d[t.parent[v]] + g.edge_length(metric, t.parent_edge[v]);
    }
    return d;
}

vector<Dist> tree_reach(const WeightedGraph& g, const ShortestPathTree& t, int metric) {
    vector<Dist> r(g.node_count(), 0);
    for (size_t i = t.order.size(); i-- > 0;) {
        NodeId v = t.order[i];
        NodeId p = t.parent[v];
        if (p == NO_NODE) continue;
        Dist through = r[v] + g.edge_length(metric, t.parent_edge[v]);
        if (through > r[p]) r[p] = through;
    }
    return r;
}

vector<EdgeId> tree_path_edges(const ShortestPathTree& t, NodeId v) {
    vector<EdgeId> path;
    while (t.parent[v] != NO_NODE) {
        path.push_back(t.parent_edge[v]);
        v = t.parent[v];
    }
    reverse(path.begin(), path.end());
    return path;
}

SymmetryReport verify_path_symmetry(const WeightedGraph& g,
                                    const vector<pair<NodeId, NodeId>>& pairs, int metric) {
    SymmetryReport report;
    map<NodeId, ShortestPathTree> trees;
    auto tree_of = [&](NodeId u) -> const ShortestPathTree& {
        auto it = trees.find(u);
        if (it == trees.end()) it = trees.emplace(u, build_shortest_path_tree(g, u, metric)).first;
        return it->second;
    };
    for (auto [u, v] : pairs) {
        report.pairs_checked++;
        if (u == v) continue;
        vector<EdgeId> uv = tree_path_edges(tree_of(u), v);
        vector<EdgeId> vu = tree_path_edges(tree_of(v), u);
        reverse(vu.begin(), vu.end());
        if (uv != vu) report.violations.emplace_back(u, v);
    }
    return report;
}

}  // namespace skeledim
