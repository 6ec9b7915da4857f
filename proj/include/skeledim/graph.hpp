#pragma once

// Undirected weighted graph with one or more positive integer length
// functions per edge. Loaded from DIMACS ".gr" shortest-path files;
// writable back in a canonical form (edges sorted by endpoint pair)
// that also defines the graph fingerprint.

#include <iosfwd>
#include <string>
#include <vector>

#include "skeledim/util.hpp"

namespace skeledim {

struct Edge {
    NodeId u, v;  // u < v after construction
};

class WeightedGraph {
public:
    // edges may arrive in any orientation/order; they are flipped to u < v
    // and sorted by (u, v). Lengths must be >= 1; graph must be connected.
    WeightedGraph(uint32_t n, std::vector<Edge> edges, std::vector<uint32_t> base_lengths,
                  std::string base_name = "base");

    uint32_t node_count() const { return n_; }
    uint32_t edge_count() const { return static_cast<uint32_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    // incident edges of u as (edge id, other endpoint)
    const std::vector<std::pair<EdgeId, NodeId>>& incident(NodeId u) const { return adj_[u]; }

    static constexpr int BASE_METRIC = 0;
    int hop_metric() const { return hop_metric_; }
    int metric_id(const std::string& name) const;  // -1 when absent
    const std::string& metric_name(int id) const { return metric_names_[id]; }
    size_t metric_count() const { return metric_names_.size(); }
    uint32_t edge_length(int metric, EdgeId e) const { return metric_lengths_[metric][e]; }
    const std::vector<uint32_t>& lengths(int metric) const { return metric_lengths_[metric]; }
    // total length of all edges under a metric
    uint64_t total_length(int metric) const;

    // attach an extra length function; must cover every edge
    int add_metric(const std::string& name, std::vector<uint32_t> lengths);

    EdgeId find_edge(NodeId u, NodeId v) const;  // NO_EDGE when absent

private:
    uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<EdgeId, NodeId>>> adj_;
    std::vector<std::string> metric_names_;
    std::vector<std::vector<uint32_t>> metric_lengths_;
    int hop_metric_ = -1;
};

// DIMACS shortest-path format: "c" comments, one "p sp <n> <m>" header,
// "a <u> <v> <w>" arcs with 1-based ids. Arc pairs (u,v,w),(v,u,w) merge
// into one undirected edge; same-direction duplicates keep the minimum
// weight; opposite-direction minima that disagree are rejected as
// directed input. Disconnected graphs are rejected.
WeightedGraph parse_dimacs(std::istream& in, const std::string& metric_name = "base");
WeightedGraph parse_dimacs_file(const std::string& path, const std::string& metric_name = "base");

// canonical serialization: one "a u v w" line per edge, u < v, sorted
void write_dimacs(const WeightedGraph& g, int metric, std::ostream& out);
std::string canonical_dimacs(const WeightedGraph& g, int metric = WeightedGraph::BASE_METRIC);

// hash of the canonical base-metric serialization
uint64_t graph_fingerprint(const WeightedGraph& g);

// load a second length function from another .gr file with identical topology
int add_metric_from_dimacs(WeightedGraph& g, const std::string& name, const std::string& path);

// DIMACS ".co" coordinate file: "v <id> <x> <y>" lines, 1-based ids;
// returns per-node (x, y) in the file's integer units
std::vector<std::pair<int64_t, int64_t>> parse_dimacs_coords(const std::string& path, uint32_t n);

struct Ball {
    NodeId center = NO_NODE;
    Dist radius = 0;
    std::vector<NodeId> members;  // sorted
};

// exact members of { v : d(center, v) <= radius } via bounded Dijkstra
Ball ball(const WeightedGraph& g, NodeId center, Dist radius, int metric = WeightedGraph::BASE_METRIC);

// distances from src under a metric (plain Dijkstra, no tiebreak);
// cutoff limits the search to distances <= cutoff (INF_DIST elsewhere)
std::vector<Dist> dijkstra_distances(const WeightedGraph& g, NodeId src,
                                     int metric = WeightedGraph::BASE_METRIC,
                                     Dist cutoff = INF_DIST);

}  // namespace skeledim
