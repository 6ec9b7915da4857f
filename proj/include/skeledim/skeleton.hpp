#pragma once

// Discrete skeleton of a shortest-path tree: the subtree of the geometric
// realization keeping points whose reach is at least alpha times their
// distance from the root. A pruned edge is truncated at the exact radius
// where equality holds, kept as a rational, so widths and cut profiles
// are computed without rounding.

#include <optional>
#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/sptree.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

struct SkeletonEdge {
    EdgeId edge = NO_EDGE;
    NodeId near_node = NO_NODE;  // endpoint closer to the root
    NodeId far_node = NO_NODE;
    Dist near_dist = 0;  // reach-metric distance of near_node
    Rat far_limit;       // realized far radius; == near_dist + metric length iff full
    bool full = false;
};

struct DiscreteSkeleton {
    NodeId root = NO_NODE;
    int reach_metric = 0;
    Rat alpha;
    std::vector<SkeletonEdge> kept;
    std::vector<char> node_kept;     // nodes with reach >= alpha * dist
    std::vector<Dist> metric_dist;   // reach-metric distance in the tree
    std::vector<Dist> metric_reach;  // reach-metric reach in the tree
};

// alpha in (0, 1]; reach-metric distances and reach are measured along
// the tree under reach_metric while the tree shape comes from its own
// build metric
DiscreteSkeleton compute_skeleton(const WeightedGraph& g, const ShortestPathTree& t,
                                  int reach_metric, Rat alpha);

// same computation for any alpha > 0; thresholds above 1 arise in the
// cross-threshold inequality check
DiscreteSkeleton compute_skeleton_any_alpha(const WeightedGraph& g, const ShortestPathTree& t,
                                            int reach_metric, Rat alpha);

// piecewise-constant cut profile: cut[i] points at radii in
// (breakpoints[i-1], breakpoints[i]], with an implicit 0 before the first
// breakpoint interval start
struct CutProfile {
    std::vector<Rat> breakpoints;
    std::vector<uint32_t> cut;
    uint32_t width = 0;
};

CutProfile skeleton_cut_profile(const DiscreteSkeleton& s);
uint32_t skeleton_width(const DiscreteSkeleton& s);

// sum of 1/d over unit-grid skeleton points of the 12x virtual
// subdivision at virtual distances d > cutoff_twelfths
double integrated_skeleton_dimension(const DiscreteSkeleton& s, uint64_t cutoff_twelfths = 0);

struct RootSelection {
    bool all = true;
    uint32_t sample = 0;
    uint64_t seed = 0;
    static RootSelection all_roots() { return {}; }
    static RootSelection sampled(uint32_t k, uint64_t seed) { return {false, k, seed}; }
};

struct SkeletonStats {
    std::vector<NodeId> roots;
    std::vector<uint32_t> widths;  // aligned with roots
    std::vector<double> isk;       // empty unless requested
    uint32_t k = 0;                // max width; lower bound when sampled
    bool sampled = false;
    double avg_width = 0;
    double isk_avg = 0;
    int reach_metric = 0;
    Rat alpha;
    uint64_t isk_cutoff = 0;
};

SkeletonStats skeleton_dimension(const WeightedGraph& g, RootSelection roots,
                                 int reach_metric = WeightedGraph::BASE_METRIC,
                                 Rat alpha = Rat(1, 2), unsigned threads = 1,
                                 bool with_isk = false, uint64_t isk_cutoff = 0);

// ball-cover centers {u} plus the far extremities of skeleton edges
// crossing radii 2r/3 and 10r/9 in the half-radius skeleton of u; covers
// B(u, 19r/9) with balls of radius r
std::vector<NodeId> doubling_cover(const WeightedGraph& g, NodeId u, Dist r,
                                   int metric = WeightedGraph::BASE_METRIC);

struct AlphaRelationReport {
    Rat alpha, beta, gamma;
    uint32_t k_alpha = 0, k_beta = 0, k_gamma = 0;
    bool ok = false;  // k_beta <= k_alpha <= k_beta * k_gamma
};

// checks the cross-threshold width inequalities for 0 < alpha < beta <= 1
AlphaRelationReport alpha_relation_check(const WeightedGraph& g, Rat alpha, Rat beta,
                                         unsigned threads = 1);

}  // namespace skeledim
