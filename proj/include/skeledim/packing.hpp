#pragma once

// Greedy packing of vertex-disjoint shortest paths of length in
// (r/2, r] that touch the ball B(u, r). Any such packing lower-bounds
// the size of a hitting set for those paths. Candidates are descending
// subpaths in shortest-path trees of sampled sources near the ball;
// selection is greedy with seeded randomized restarts, and every
// reported packing is re-verified from scratch.

#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

struct PackingResult {
    NodeId center = NO_NODE;
    Dist radius = 0;
    std::vector<std::vector<NodeId>> paths;  // node sequences
    size_t size() const { return paths.size(); }
};

struct PackingOptions {
    uint32_t budget = 32;       // randomized greedy restarts
    uint32_t max_sources = 200; // shortest-path trees sampled around the ball
    uint32_t per_source_cap = 4000;
    uint64_t seed = 0;
};

PackingResult pack_paths(const WeightedGraph& g, NodeId center, Dist radius,
                         const PackingOptions& opt = {});

struct PackingCheck {
    bool disjoint = false;
    bool all_shortest = false;
    bool lengths_in_window = false;
    bool all_touch_ball = false;
    bool ok() const { return disjoint && all_shortest && lengths_in_window && all_touch_ball; }
};

// independent re-verification of every packing invariant
PackingCheck verify_packing(const WeightedGraph& g, const PackingResult& p);

struct SeparationRow {
    uint32_t L = 0;
    uint32_t n = 0;
    uint32_t k = 0;        // exact skeleton dimension, all roots
    uint32_t pack_lb = 0;  // corner-ball packing size
};

// corner-ball radius used by the study for a given grid level
Dist grid_corner_radius(uint32_t L);

std::vector<SeparationRow> separation_study(uint32_t l_min, uint32_t l_max,
                                            const PackingOptions& opt, unsigned threads = 1);

}  // namespace skeledim
