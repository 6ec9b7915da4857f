#pragma once

// Randomized edge-hub labeling. Every edge of length a stands for 12a
// virtual unit edges; for a pair (u, v) at virtual distance d the hub is
// the virtual edge of minimum rho inside the central window
// [5d/12 + 1, 7d/12] of the unique u-v path, reported as the real edge
// containing it. Windows are symmetric in u and v, so the hub lands in
// both hub sets and decoding is exact for every pair.

#include <iosfwd>
#include <optional>
#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/rho.hpp"
#include "skeledim/sptree.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

struct HubEntry {
    NodeId a = NO_NODE, b = NO_NODE;  // edge endpoints, a < b
    Dist da = 0, db = 0;              // owner-to-endpoint distances, twelfth units
    friend bool operator==(const HubEntry& x, const HubEntry& y) {
        return x.a == y.a && x.b == y.b && x.da == y.da && x.db == y.db;
    }
};

struct HubSet {
    NodeId owner = NO_NODE;
    std::vector<HubEntry> hubs;  // ascending (a, b)
};

struct Labeling {
    uint32_t n = 0;
    uint64_t seed = 0;
    uint64_t fingerprint = 0;
    std::vector<HubSet> sets;
};

// reference selection for one target: walks the tree path explicitly
EdgeId hub_edge(const WeightedGraph& g, const RhoModel& rho, const ShortestPathTree& t, NodeId v);

// all hubs of the tree root via one depth-first scan that slides the
// central window along each branch; results match per-target hub_edge.
// Targets closer than min_target_dist (metric units) are skipped.
HubSet build_hub_set(const WeightedGraph& g, const RhoModel& rho, const ShortestPathTree& t,
                     Dist min_target_dist = 0);

Labeling build_labeling(const WeightedGraph& g, uint64_t seed, unsigned threads = 1);

// exact distance in original units; throws VerifyError when two distinct
// nodes share no hub (possible only for corrupt labels)
Dist query(const Labeling& l, NodeId u, NodeId v);

void write_labeling(const Labeling& l, std::ostream& out);
Labeling read_labeling(std::istream& in);

struct LabelVerifyReport {
    uint64_t pairs = 0;
    uint64_t mismatches = 0;
    std::vector<std::tuple<NodeId, NodeId, Dist, Dist>> samples;  // u, v, got, want
    bool ok() const { return mismatches == 0; }
};

// compares decoded distances against plain Dijkstra; exhaustive or over
// `pairs` seeded random pairs
LabelVerifyReport verify_labeling(const WeightedGraph& g, const Labeling& l, bool exhaustive,
                                  uint64_t pairs = 0, uint64_t seed = 0);

struct LabelSizeStats {
    uint64_t total = 0;
    uint32_t min = 0, max = 0;
    double mean = 0;
    std::vector<std::pair<uint32_t, uint32_t>> histogram;  // (size, count)
};

LabelSizeStats label_size_stats(const Labeling& l);

}  // namespace skeledim
