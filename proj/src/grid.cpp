#include "skeledim/grid.hpp"

#include <bit>

using namespace std;

namespace skeledim {

GridSpec grid_spec(uint32_t L) {
    if (L < 1 || L > 7) throw ParamError("grid parameter L must be in [1, 7]");
    GridSpec s;
    s.L = L;
    s.side = 1u << L;
    s.n = 1u << (2 * L);
    s.D = 1ull << (L + 3);
    s.Q = 1ull + (1ull << L);
    return s;
}

WeightedGraph generate_grid(uint32_t L) {
    GridSpec s = grid_spec(L);
    const uint64_t base = s.Q * (s.D + 2) * L;

    vector<Edge> edges;
    vector<uint32_t> lengths;
    edges.reserve(2ull * s.side * (s.side - 1));
    lengths.reserve(edges.capacity());

    auto tier = [&](uint32_t coord) {  // i with coord = 2^i * odd
        return static_cast<uint32_t>(countr_zero(coord));
    };

    // a gridline whose fixed coordinate is divisible by a high power of
    // two is a fast corridor: edges lying on it are shorter by Q per tier
    for (uint32_t y = 1; y <= s.side; y++) {
        for (uint32_t x = 1; x < s.side; x++) {
            uint64_t len = base - s.Q * tier(y);
            edges.push_back({s.node(x, y), s.node(x + 1, y)});
            lengths.push_back(static_cast<uint32_t>(len));
        }
    }
    for (uint32_t x = 1; x <= s.side; x++) {
        for (uint32_t y = 1; y < s.side; y++) {
            // column perturbation -x prefers vertical moves on the
            // rightmost side of any rectangle, making paths unique
            uint64_t len = base - s.Q * tier(x) - x;
            edges.push_back({s.node(x, y), s.node(x, y + 1)});
            lengths.push_back(static_cast<uint32_t>(len));
        }
    }
    for (uint32_t w : lengths)
        if (w == 0) throw VerifyError("grid produced a non-positive length");
    return WeightedGraph(s.n, move(edges), move(lengths), "base");
}

}  // namespace skeledim
