#pragma once

// Test-side graph builders and independent oracles. Everything here is
// deliberately written against the plainest possible algorithms so the
// library has something honest to disagree with.

#include <string>
#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/rho.hpp"
#include "skeledim/sptree.hpp"
#include "skeledim/util.hpp"

namespace skeledim::test {

//--------------------------- graph builders ------------------------

WeightedGraph make_path(uint32_t n, uint32_t len = 1);
WeightedGraph make_cycle(uint32_t n, uint32_t len = 1);
WeightedGraph make_star(uint32_t leaves, uint32_t len = 1);
WeightedGraph make_grid(uint32_t w, uint32_t h);  // unit lengths

// connected: random spanning tree plus `extra` chords, weights in
// [1, max_len], deterministic in seed
WeightedGraph random_connected(uint32_t n, uint32_t extra, uint32_t max_len, uint64_t seed);

// long-diameter unweighted shape: a path spine with random stubs/chords
WeightedGraph random_caterpillar(uint32_t n, uint32_t chords, uint64_t seed);

//--------------------------- oracles -------------------------------

// all-pairs via one plain Dijkstra per source
std::vector<std::vector<Dist>> all_pairs(const WeightedGraph& g,
                                         int metric = WeightedGraph::BASE_METRIC);

Dist eccentricity(const WeightedGraph& g, NodeId u, int metric = WeightedGraph::BASE_METRIC);

// virtual 12x subdivision of a tree under a metric: per virtual grid
// point (depth >= 1) of the skeleton with threshold alpha, counts per
// depth; width/isk read off directly
struct SubdividedSkeleton {
    std::vector<uint64_t> cut_at_depth;  // index d = virtual distance, 1-based use
    uint32_t width = 0;
    double isk(uint64_t cutoff_twelfths = 0) const;
};
SubdividedSkeleton subdivide_skeleton(const WeightedGraph& g, const ShortestPathTree& t,
                                      int reach_metric, Rat alpha);

// i.i.d. uniform sequence consistent with a sampled chain: chain entries
// keep their values, every other position draws uniform above the
// running constraints from an independent stream
std::vector<double> materialize_chain(const MinimaChain& chain, uint64_t fill_seed);

// prefix/suffix minima positions of an explicit sequence
std::vector<uint32_t> minima_positions(const std::vector<double>& values);

//--------------------------- misc ----------------------------------

struct LinFit {
    double slope = 0, intercept = 0, r2 = 0;
};
LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

std::string write_temp_file(const std::string& name_hint, const std::string& contents);

}  // namespace skeledim::test
