#include "skeledim/rho.hpp"

#include <algorithm>
#include <cmath>

using namespace std;

namespace skeledim {

namespace {

// draws for edge e consume counters 0,1,2,... of its stream
struct Draws {
    uint64_t seed;
    uint64_t stream;
    uint64_t counter = 0;
    double next() { return unit_open(prf64(seed, stream, counter++)); }
};

// number of i.i.d. trials with success probability p until the first
// success, distributed on {1, 2, ...}; infinity when p underflows
uint64_t geometric_jump(double p, double u) {
    if (p <= 0) return UINT64_MAX;
    if (p >= 1) return 1;
    double g = floor(log(u) / log1p(-p));
    if (!(g >= 0) || g > 1e18) return UINT64_MAX;
    return static_cast<uint64_t>(g) + 1;
}

}  // namespace

// Sampling runs in two phases.
//
// Prefix phase: position 1 holds a fresh uniform. Given the current
// minimum value p at position i, the gap to the next strictly smaller
// value is geometric with parameter p, and that next value is uniform
// on (0, p). The phase stops when the sampled position passes the end;
// the overshoot event has exactly the probability that no smaller value
// exists in the remaining positions, so stopping is consistent.
//
// Suffix phase: conditioned on the prefix chain, every position right
// of the global minimum m carries an i.i.d. value uniform on (m, 1).
// Scanning right-to-left from the last position, the running minimum v is
// beaten by a previous position with probability (v - m) / (1 - m), so
// the mirrored jump recurrence applies with that parameter, and each
// new minimum is uniform on (m, v). The scan stops at the global
// minimum, which joins the chain once with kind Both.
MinimaChain sample_minima_chain(uint64_t seed, EdgeId edge, uint32_t units) {
    if (units == 0) throw ParamError("chain length must be positive");
    uint64_t len = units;
    Draws rng{seed, STREAM_EDGE_RHO ^ (static_cast<uint64_t>(edge) << 8)};

    MinimaChain chain;
    chain.length = static_cast<uint32_t>(len);

    // prefix minima, ascending positions, strictly decreasing values
    vector<ChainEntry> prefix;
    uint64_t pos = 1;
    double value = rng.next();
    prefix.push_back({static_cast<uint32_t>(pos), MinKind::Prefix, value});
    while (pos < len) {
        uint64_t jump = geometric_jump(value, rng.next());
        if (jump == UINT64_MAX || pos + jump > len) break;
        pos += jump;
        value *= rng.next();  // uniform on (0, previous minimum)
        prefix.push_back({static_cast<uint32_t>(pos), MinKind::Prefix, value});
    }
    const double global_value = prefix.back().value;
    const uint64_t global_pos = prefix.back().pos;

    // suffix minima, collected right-to-left down to the global minimum
    vector<ChainEntry> suffix;
    if (global_pos < len) {
        uint64_t spos = len;
        double v = global_value + (1.0 - global_value) * rng.next();
        suffix.push_back({static_cast<uint32_t>(spos), MinKind::Suffix, v});
        while (spos > global_pos + 1) {
            double p = (v - global_value) / (1.0 - global_value);
            uint64_t jump = geometric_jump(p, rng.next());
            if (jump == UINT64_MAX || spos - global_pos <= jump) break;
            spos -= jump;
            v = global_value + (v - global_value) * rng.next();  // uniform on (m, previous)
            suffix.push_back({static_cast<uint32_t>(spos), MinKind::Suffix, v});
        }
    }

    prefix.back().kind = MinKind::Both;
    chain.entries = move(prefix);
    chain.global_index = chain.entries.size() - 1;
    for (size_t i = suffix.size(); i-- > 0;) chain.entries.push_back(suffix[i]);
    return chain;
}

const ChainEntry& MinimaChain::min_from_start(uint32_t hi) const {
    assert(hi >= 1 && hi <= length);
    // last prefix entry with pos <= hi; entry 0 is at pos 1
    const ChainEntry* best = &entries[0];
    for (size_t i = 1; i <= global_index; i++) {
        if (entries[i].pos > hi) break;
        best = &entries[i];
    }
    return *best;
}

const ChainEntry& MinimaChain::min_to_end(uint32_t lo) const {
    assert(lo >= 1 && lo <= length);
    // first entry at or after lo among the suffix part (positions ascending,
    // values ascending); the global minimum opens that part
    for (size_t i = global_index; i < entries.size(); i++)
        if (entries[i].pos >= lo) return entries[i];
    return entries.back();  // lo <= length guarantees the last entry qualifies
}

const ChainEntry* MinimaChain::min_in_window(uint32_t lo, uint32_t hi) const {
    assert(lo >= 1 && hi <= length && lo <= hi);
    if (lo == 1 && hi == length) return &global_min();
    if (lo == 1) return &min_from_start(hi);
    if (hi == length) return &min_to_end(lo);
    return nullptr;  // interior window: chain is not sufficient
}

RhoModel::RhoModel(const WeightedGraph& g, uint64_t seed, int metric)
    : seed_(seed), metric_(metric) {
    chains_.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); e++)
        chains_.push_back(sample_minima_chain(seed, e, 12 * g.edge_length(metric, e)));
}

}  // namespace skeledim
