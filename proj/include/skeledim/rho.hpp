#pragma once

// Per-edge random streams. An edge of length a stands for 12*a virtual
// unit edges, each carrying an i.i.d. uniform value. Only the chain of
// prefix minima and suffix minima of that sequence is ever needed, and
// it is sampled directly with geometric jumps, never materializing the
// 12*a values. Same (seed, edge, a) always yields the same chain.

#include <cstdint>
#include <vector>

#include "skeledim/graph.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

enum class MinKind : uint8_t { Prefix, Suffix, Both };

struct ChainEntry {
    uint32_t pos = 0;  // 1-based virtual edge index
    MinKind kind = MinKind::Prefix;
    double value = 0;
};

// Deterministic comparison key for rho values: ties between doubles are
// broken by (edge id, virtual index), so an argmin over any set of
// entries is unique.
struct RhoKey {
    double value;
    EdgeId edge;
    uint32_t pos;
    friend bool operator<(const RhoKey& a, const RhoKey& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.pos < b.pos;
    }
    friend bool operator==(const RhoKey& a, const RhoKey& b) {
        return a.value == b.value && a.edge == b.edge && a.pos == b.pos;
    }
};

struct MinimaChain {
    uint32_t length = 0;               // 12 * a
    std::vector<ChainEntry> entries;   // ascending pos; exactly one Both entry
    size_t global_index = 0;           // index of the Both entry

    const ChainEntry& global_min() const { return entries[global_index]; }

    // minimum over virtual indices [1, hi]; hi >= 1
    const ChainEntry& min_from_start(uint32_t hi) const;
    // minimum over virtual indices [lo, length]; lo <= length
    const ChainEntry& min_to_end(uint32_t lo) const;
    // minimum over [lo, hi] when the window touches an extremity of the
    // edge (lo == 1 or hi == length); interior windows are not decodable
    // from the chain and return nullptr
    const ChainEntry* min_in_window(uint32_t lo, uint32_t hi) const;
};

// chain of a virtual sequence with `units` entries (an edge of metric
// length a uses units = 12*a); units >= 1
MinimaChain sample_minima_chain(uint64_t seed, EdgeId edge, uint32_t units);

// chains for every edge of a graph under one shared seed
class RhoModel {
public:
    RhoModel(const WeightedGraph& g, uint64_t seed, int metric = WeightedGraph::BASE_METRIC);
    const MinimaChain& chain(EdgeId e) const { return chains_[e]; }
    uint64_t seed() const { return seed_; }
    int metric() const { return metric_; }

private:
    uint64_t seed_;
    int metric_;
    std::vector<MinimaChain> chains_;
};

// per-node uniform values, independent of the edge streams
inline double node_rho(uint64_t seed, NodeId v) {
    return unit_open(prf64(seed, STREAM_NODE_RHO, v));
}

}  // namespace skeledim
