#include "skeledim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

using namespace std;

namespace skeledim {

WeightedGraph::WeightedGraph(uint32_t n, vector<Edge> edges, vector<uint32_t> base_lengths,
                             string base_name)
    : n_(n) {
    if (edges.size() != base_lengths.size())
        throw ParamError("edge and length counts differ");
    vector<size_t> idx(edges.size());
    for (size_t i = 0; i < edges.size(); i++) {
        Edge& e = edges[i];
        if (e.u >= n || e.v >= n) throw ParamError("edge endpoint out of range");
        if (e.u == e.v) throw ParamError("self-loop rejected");
        if (base_lengths[i] == 0) throw ParamError("zero-length edge rejected");
        if (e.u > e.v) swap(e.u, e.v);
        idx[i] = i;
    }
    sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return tie(edges[a].u, edges[a].v) < tie(edges[b].u, edges[b].v);
    });
    edges_.reserve(edges.size());
    vector<uint32_t> base;
    base.reserve(edges.size());
    for (size_t i : idx) {
        if (!edges_.empty() && edges_.back().u == edges[i].u && edges_.back().v == edges[i].v)
            throw ParamError("parallel edge rejected");
        edges_.push_back(edges[i]);
        base.push_back(base_lengths[i]);
    }
    adj_.assign(n_, {});
    for (EdgeId e = 0; e < edges_.size(); e++) {
        adj_[edges_[e].u].emplace_back(e, edges_[e].v);
        adj_[edges_[e].v].emplace_back(e, edges_[e].u);
    }
    metric_names_.push_back(move(base_name));
    metric_lengths_.push_back(move(base));
    hop_metric_ = add_metric("hop", vector<uint32_t>(edges_.size(), 1));

    // connectivity
    if (n_ == 0) throw ParamError("empty graph");
    vector<char> seen(n_, 0);
    queue<NodeId> q;
    q.push(0);
    seen[0] = 1;
    uint32_t reached = 1;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (auto [e, w] : adj_[u])
            if (!seen[w]) {
                seen[w] = 1;
                reached++;
                q.push(w);
            }
    }
    if (reached != n_) {
        uint32_t components = 1;
        for (NodeId v = 0; v < n_; v++) {
            if (seen[v]) continue;
            components++;
            seen[v] = 1;
            q.push(v);
            while (!q.empty()) {
                NodeId u = q.front();
                q.pop();
                for (auto [e, w] : adj_[u])
                    if (!seen[w]) {
                        seen[w] = 1;
                        q.push(w);
                    }
            }
        }
        throw ParamError("graph is disconnected (" + to_string(components) + " components)");
    }
}

int WeightedGraph::metric_id(const string& name) const {
    for (size_t i = 0; i < metric_names_.size(); i++)
        if (metric_names_[i] == name) return static_cast<int>(i);
    return -1;
}

int WeightedGraph::add_metric(const string& name, vector<uint32_t> lengths) {
    if (metric_id(name) >= 0) throw ParamError("duplicate metric name: " + name);
    if (lengths.size() != edges_.size()) throw ParamError("metric length count mismatch");
    for (uint32_t w : lengths)
        if (w == 0) throw ParamError("zero-length edge rejected in metric " + name);
    metric_names_.push_back(name);
    metric_lengths_.push_back(move(lengths));
    return static_cast<int>(metric_names_.size()) - 1;
}

uint64_t WeightedGraph::total_length(int metric) const {
    uint64_t s = 0;
    for (uint32_t w : metric_lengths_[metric]) s += w;
    return s;
}

EdgeId WeightedGraph::find_edge(NodeId u, NodeId v) const {
    if (u > v) swap(u, v);
    // edges_ sorted by (u, v)
    auto it = lower_bound(edges_.begin(), edges_.end(), Edge{u, v}, [](const Edge& a, const Edge& b) {
        return tie(a.u, a.v) < tie(b.u, b.v);
    });
    if (it != edges_.end() && it->u == u && it->v == v)
        return static_cast<EdgeId>(it - edges_.begin());
    return NO_EDGE;
}

//--------------------------- DIMACS --------------------------------

WeightedGraph parse_dimacs(istream& in, const string& metric_name) {
    string line;
    size_t line_no = 0;
    uint64_t n = 0, m = 0, arc_lines = 0;
    bool have_header = false;
    // per ordered pair, minimum arc weight
    map<pair<NodeId, NodeId>, uint32_t> arcs;

    while (getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == 'c') continue;
        istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'p') {
            string kind;
            ls >> kind >> n >> m;
            if (!ls || kind != "sp") throw ParseError("bad problem line", line_no);
            if (n == 0 || n > (1ull << 31)) throw ParseError("node count out of range", line_no);
            have_header = true;
        } else if (tag == 'a') {
            arc_lines++;
            if (!have_header) throw ParseError("arc before problem line", line_no);
            int64_t u, v, w;
            ls >> u >> v >> w;
            if (!ls) throw ParseError("malformed arc line", line_no);
            if (u < 1 || static_cast<uint64_t>(u) > n || v < 1 || static_cast<uint64_t>(v) > n)
                throw ParseError("arc endpoint out of range", line_no);
            if (w <= 0) throw ParseError("non-positive arc weight", line_no);
            if (w > UINT32_MAX) throw ParseError("arc weight out of range", line_no);
            if (u == v) throw ParseError("self-loop arc", line_no);
            auto key = make_pair(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1));
            auto [it, fresh] = arcs.emplace(key, static_cast<uint32_t>(w));
            if (!fresh) it->second = min(it->second, static_cast<uint32_t>(w));
        } else {
            throw ParseError(string("unknown line tag '") + tag + "'", line_no);
        }
    }
    if (!have_header) throw ParseError("missing problem line", line_no ? line_no : 1);
    if (arc_lines != m)
        throw ParseError("header declares " + to_string(m) + " arcs but file has " +
                             to_string(arc_lines),
                         line_no);

    vector<Edge> edges;
    vector<uint32_t> lengths;
    for (const auto& [key, w] : arcs) {
        auto [u, v] = key;
        if (u > v) continue;  // handled from the (v,u) entry below
        auto rev = arcs.find({v, u});
        if (rev != arcs.end() && rev->second != w)
            throw ParamError("asymmetric arc pair (" + to_string(u + 1) + "," + to_string(v + 1) +
                             "): not an undirected graph");
        edges.push_back({u, v});
        lengths.push_back(w);
    }
    for (const auto& [key, w] : arcs) {  // arcs present only as (v,u) with v > u
        auto [u, v] = key;
        if (u < v) continue;
        if (arcs.find({v, u}) == arcs.end()) {
            edges.push_back({v, u});
            lengths.push_back(w);
        }
    }
    return WeightedGraph(static_cast<uint32_t>(n), move(edges), move(lengths), metric_name);
}

WeightedGraph parse_dimacs_file(const string& path, const string& metric_name) {
    ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_dimacs(in, metric_name);
}

void write_dimacs(const WeightedGraph& g, int metric, ostream& out) {
    out << "p sp " << g.node_count() << " " << g.edge_count() << "\n";
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        const Edge& ed = g.edge(e);
        out << "a " << ed.u + 1 << " " << ed.v + 1 << " " << g.edge_length(metric, e) << "\n";
    }
}

string canonical_dimacs(const WeightedGraph& g, int metric) {
    ostringstream os;
    write_dimacs(g, metric, os);
    return os.str();
}

uint64_t graph_fingerprint(const WeightedGraph& g) {
    string s = canonical_dimacs(g, WeightedGraph::BASE_METRIC);
    return fnv1a64(s.data(), s.size());
}

int add_metric_from_dimacs(WeightedGraph& g, const string& name, const string& path) {
    WeightedGraph other = parse_dimacs_file(path, name);
    if (other.node_count() != g.node_count() || other.edge_count() != g.edge_count())
        throw ParamError("metric file topology differs from graph");
    vector<uint32_t> lengths(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); e++) {
        if (other.edge(e).u != g.edge(e).u || other.edge(e).v != g.edge(e).v)
            throw ParamError("metric file topology differs from graph");
        lengths[e] = other.edge_length(WeightedGraph::BASE_METRIC, e);
    }
    return g.add_metric(name, move(lengths));
}

vector<pair<int64_t, int64_t>> parse_dimacs_coords(const string& path, uint32_t n) {
    ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    vector<pair<int64_t, int64_t>> coords(n, {INT64_MIN, INT64_MIN});
    string line;
    size_t line_no = 0;
    while (getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == 'c' || line[0] == 'p') continue;
        istringstream ls(line);
        char tag;
        int64_t id, x, y;
        ls >> tag >> id >> x >> y;
        if (!ls || tag != 'v') throw ParseError("bad coordinate line", line_no);
        if (id < 1 || static_cast<uint64_t>(id) > n)
            throw ParseError("coordinate id out of range", line_no);
        coords[id - 1] = {x, y};
    }
    for (auto [x, y] : coords)
        if (x == INT64_MIN && y == INT64_MIN)
            throw ParseError("coordinate file does not cover every node", line_no);
    return coords;
}

//--------------------------- searches ------------------------------

vector<Dist> dijkstra_distances(const WeightedGraph& g, NodeId src, int metric, Dist cutoff) {
    vector<Dist> dist(g.node_count(), INF_DIST);
    priority_queue<pair<Dist, NodeId>, vector<pair<Dist, NodeId>>, greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [e, v] : g.incident(u)) {
            Dist nd = d + g.edge_length(metric, e);
            if (nd <= cutoff && nd < dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    return dist;
}

Ball ball(const WeightedGraph& g, NodeId center, Dist radius, int metric) {
    if (center >= g.node_count()) throw ParamError("ball center out of range");
    Ball b;
    b.center = center;
    b.radius = radius;
    vector<Dist> dist = dijkstra_distances(g, center, metric, radius);
    for (NodeId v = 0; v < g.node_count(); v++)
        if (dist[v] <= radius) b.members.push_back(v);
    return b;
}

}  // namespace skeledim
