#pragma once

// Weighted square-grid family with transit arteries. The 2^L x 2^L grid
// gets lengths Q*((D+2)L - i) on edges whose fixed coordinate is an odd
// multiple of 2^i (D = 2^(L+3), Q = 1 + 2^L), so higher powers of two are
// faster corridors; vertical edges are additionally shortened by their
// column index, which makes every shortest path unique with no tiebreak.

#include "skeledim/graph.hpp"
#include "skeledim/util.hpp"

namespace skeledim {

struct GridSpec {
    uint32_t L = 0;
    uint32_t side = 0;      // 2^L
    uint32_t n = 0;         // 4^L
    uint64_t D = 0;         // 2^(L+3)
    uint64_t Q = 0;         // 1 + 2^L
    // node ids are row-major, 1-based coordinates
    NodeId node(uint32_t x, uint32_t y) const { return (y - 1) * side + (x - 1); }
    std::pair<uint32_t, uint32_t> coords(NodeId v) const {
        return {v % side + 1, v / side + 1};
    }
};

GridSpec grid_spec(uint32_t L);

// 1 <= L <= 7
WeightedGraph generate_grid(uint32_t L);

}  // namespace skeledim
