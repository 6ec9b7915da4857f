#pragma once

// Unique-shortest-path trees. Path weight is the lexicographic triple
// (sum of metric lengths, sum of 64-bit per-edge tiebreak keys, smaller
// incoming edge id on exact ties), accumulated exactly. The key sum makes
// two distinct paths between a fixed pair compare equal only on a 64-bit
// hash collision of edge subsets; the symmetry checker below is the gate
// for that.

#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

struct ShortestPathTree {
    NodeId root = NO_NODE;
    int metric = 0;
    std::vector<NodeId> parent;       // NO_NODE at root
    std::vector<EdgeId> parent_edge;  // NO_EDGE at root
    std::vector<Dist> dist;
    std::vector<Dist> reach;    // within the tree, same metric as dist
    std::vector<NodeId> order;  // non-decreasing dist, root first

    // children in CSR layout
    std::vector<uint32_t> child_off;
    std::vector<NodeId> child_node;
    std::vector<EdgeId> child_edge;

    // count of relaxations where metric distances tied exactly and the
    // perturbation keys decided; zero means the metric alone is tie-free
    uint64_t base_ties = 0;

    uint32_t child_begin(NodeId v) const { return child_off[v]; }
    uint32_t child_end(NodeId v) const { return child_off[v + 1]; }
};

ShortestPathTree build_shortest_path_tree(const WeightedGraph& g, NodeId root,
                                          int metric = WeightedGraph::BASE_METRIC);

// distances along tree edges under another metric (root = 0)
std::vector<Dist> tree_distances(const WeightedGraph& g, const ShortestPathTree& t, int metric);

// reach of each node within the tree under another metric:
// reach(v) = max over descendants x of d(v, x)
std::vector<Dist> tree_reach(const WeightedGraph& g, const ShortestPathTree& t, int metric);

// edge ids along the tree path root -> v
std::vector<EdgeId> tree_path_edges(const ShortestPathTree& t, NodeId v);

struct SymmetryReport {
    uint64_t pairs_checked = 0;
    std::vector<std::pair<NodeId, NodeId>> violations;
    bool ok() const { return violations.empty(); }
};

// checks that the u->v edge sequence in T_u is the reverse of the v->u
// sequence in T_v for each sampled pair
SymmetryReport verify_path_symmetry(const WeightedGraph& g,
                                    const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                    int metric = WeightedGraph::BASE_METRIC);

}  // namespace skeledim
