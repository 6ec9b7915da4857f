#pragma once

// Distance labels for unweighted graphs that are exact only for pairs at
// hop distance >= D. Each scale D_i in [D, Dmax) gets a range hub set
// correct on distances [D_i, 5*D_i/4]: the shortest-path tree toward
// targets in that band is truncated at 3*D_i/4 levels and split into
// heavy vertices (subtree has >= D_i leaves on the last level, all kept)
// and light vertices, of which the rho-minima of descending D_i/12-edge
// windows are kept. Distances >= Dmax are served by the edge-hub scheme
// restricted to far targets.

#include <iosfwd>
#include <optional>
#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/hub_labeling.hpp"
#include "skeledim/rho.hpp"
#include "skeledim/sptree.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

struct NodeHub {
    NodeId node = NO_NODE;
    uint32_t dist = 0;  // hop distance from the owner
    friend bool operator==(const NodeHub& a, const NodeHub& b) {
        return a.node == b.node && a.dist == b.dist;
    }
};

struct RangeHubSet {
    NodeId owner = NO_NODE;
    uint32_t scale = 0;  // D_i
    std::vector<NodeHub> hubs;  // ascending node id
    uint32_t heavy_count = 0;
    uint32_t light_count = 0;
};

// requires 12 | D and unit base lengths
RangeHubSet build_range_hub_set(const WeightedGraph& g, NodeId u, uint32_t D, uint64_t seed);

// scale sequence below the tail threshold plus the threshold itself:
// D_0 = 12*floor(D/12), then largest 12-multiples below 5/4 of the
// previous scale (bumped by 12 when that stalls), stopping at
// Dmax = max(D, floor(sqrt(n)/ln n)); the union of [D_i, 5*D_i/4] must
// cover every integer in [D, Dmax)
std::pair<std::vector<uint32_t>, uint32_t> d_scale_sequence(uint32_t D, uint32_t n);

struct DpLabel {
    NodeId owner = NO_NODE;
    std::vector<NodeHub> node_hubs;   // ascending node id
    std::vector<HubEntry> edge_hubs;  // ascending (a, b), twelfth-hop distances
};

struct DpLabeling {
    uint32_t n = 0;
    uint32_t D = 0, Dmax = 0;
    uint64_t seed = 0;
    uint64_t fingerprint = 0;
    std::vector<DpLabel> labels;
};

DpLabeling build_d_preserving_labeling(const WeightedGraph& g, uint32_t D, uint64_t seed,
                                       unsigned threads = 1);

// minimum over shared hubs; exact when the true distance is >= D, an
// overestimate or nullopt (below range) otherwise
std::optional<uint32_t> query_d_preserving(const DpLabel& a, const DpLabel& b);

void write_dp_labeling(const DpLabeling& l, std::ostream& out);
DpLabeling read_dp_labeling(std::istream& in);

struct DpVerifyReport {
    uint64_t pairs = 0;       // pairs at distance >= min_dist
    uint64_t mismatches = 0;
    uint64_t unsound = 0;     // below-range answers smaller than the true distance
    std::vector<std::tuple<NodeId, NodeId, int64_t, uint32_t>> samples;
    bool ok() const { return mismatches == 0 && unsound == 0; }
};

DpVerifyReport verify_dp_labeling(const WeightedGraph& g, const DpLabeling& l, uint32_t min_dist,
                                  bool exhaustive, uint64_t pairs = 0, uint64_t seed = 0);

}  // namespace skeledim
