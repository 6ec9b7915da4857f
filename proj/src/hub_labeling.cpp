#include "skeledim/hub_labeling.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

using namespace std;

namespace skeledim {

namespace {

// one real edge laid along a root path; virtual path positions
// (cum_start, cum_end] map onto canonical chain indices 1..12*len,
// reversed when the path traverses the edge from its higher endpoint
struct PathEdge {
    EdgeId edge;
    bool fwd;
    uint64_t cum_start, cum_end;
};

uint32_t to_canonical(const PathEdge& pe, uint64_t path_pos) {
    uint64_t local = path_pos - pe.cum_start;  // 1..12*len
    if (pe.fwd) return static_cast<uint32_t>(local);
    return static_cast<uint32_t>(pe.cum_end - pe.cum_start - local + 1);
}

// window [wlo, whi] against one edge's span; returns the canonical
// subrange and whether it touches a canonical extremity
pair<uint32_t, uint32_t> canonical_range(const PathEdge& pe, uint64_t glo, uint64_t ghi) {
    uint32_t c1 = to_canonical(pe, glo);
    uint32_t c2 = to_canonical(pe, ghi);
    if (c1 > c2) swap(c1, c2);
    return {c1, c2};
}

struct WindowBounds {
    uint64_t lo, hi;  // virtual edge indices, inclusive
};

WindowBounds central_window(Dist metric_dist) {
    // virtual distance is 12 * metric_dist, so the bounds are integers
    return {5 * metric_dist + 1, 7 * metric_dist};
}

// index of the path edge containing virtual position g
size_t edge_at(const vector<PathEdge>& path, uint64_t g) {
    size_t lo = 0, hi = path.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (path[mid].cum_end >= g)
            hi = mid;
        else
            lo = mid + 1;
    }
    assert(lo < path.size() && path[lo].cum_start < g && g <= path[lo].cum_end);
    return lo;
}

// hub for a window laid along `path`; nullopt when the window sits
// strictly inside one real edge, where that edge is the hub outright
optional<RhoKey> window_min(const vector<PathEdge>& path, const RhoModel& rho,
                            const WindowBounds& w) {
    size_t first = edge_at(path, w.lo);
    size_t last = edge_at(path, w.hi);
    if (first == last) {
        const PathEdge& pe = path[first];
        if (w.lo >= pe.cum_start + 2 && w.hi <= pe.cum_end - 1) return nullopt;
    }
    optional<RhoKey> best;
    for (size_t i = first; i <= last; i++) {
        const PathEdge& pe = path[i];
        uint64_t glo = max(w.lo, pe.cum_start + 1);
        uint64_t ghi = min(w.hi, pe.cum_end);
        auto [clo, chi] = canonical_range(pe, glo, ghi);
        const MinimaChain& chain = rho.chain(pe.edge);
        const ChainEntry* entry = chain.min_in_window(clo, chi);
        // every multi-edge fragment touches an extremity of its edge
        if (entry == nullptr)
            throw VerifyError("window fragment without an edge extremity");
        RhoKey key{entry->value, pe.edge, entry->pos};
        if (!best || key < *best) best = key;
    }
    assert(best.has_value());
    return best;
}

}  // namespace

EdgeId hub_edge(const WeightedGraph& g, const RhoModel& rho, const ShortestPathTree& t,
                NodeId v) {
    if (v == t.root) throw ParamError("hub_edge needs a target distinct from the root");
    assert(t.metric == rho.metric());
    // path root -> v with virtual cumulative positions
    vector<NodeId> nodes;
    for (NodeId x = v; x != NO_NODE; x = t.parent[x]) nodes.push_back(x);
    reverse(nodes.begin(), nodes.end());
    vector<PathEdge> path;
    uint64_t cum = 0;
    for (size_t i = 0; i + 1 < nodes.size(); i++) {
        NodeId from = nodes[i], to = nodes[i + 1];
        EdgeId e = t.parent_edge[to];
        uint64_t len = 12ull * g.edge_length(t.metric, e);
        path.push_back({e, g.edge(e).u == from, cum, cum + len});
        cum += len;
    }
    WindowBounds w = central_window(t.dist[v]);
    optional<RhoKey> best = window_min(path, rho, w);
    if (!best) return path[edge_at(path, w.lo)].edge;  // long-edge rule
    return best->edge;
}

//--------------------------- window scan ---------------------------

namespace {

struct ScanItem {
    uint64_t pos;  // virtual path position
    RhoKey key;
};

// Depth-first scan holding the window of the current branch. Window
// contents are the chain entries inside [5d+1, 7d] for the node being
// visited; both ends only advance while descending, and every advance
// is undone on backtrack, so each branch sees exactly the window the
// per-target reference would build.
class WindowScan {
public:
    WindowScan(const WeightedGraph& g, const RhoModel& rho, const ShortestPathTree& t,
               Dist min_target_dist)
        : g_(g), rho_(rho), t_(t), min_target_(min_target_dist) {}

    HubSet run() {
        HubSet out;
        out.owner = t_.root;
        unordered_set<EdgeId> hubs;

        struct Frame {
            NodeId node;
            uint32_t child_cursor;
            // undo state captured when the node was entered
            size_t items_before;
            size_t old_left, old_right;
        };
        vector<Frame> stack;
        stack.push_back({t_.root, t_.child_begin(t_.root), 0, 0, 0});

        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.child_cursor >= t_.child_end(f.node)) {
                if (stack.size() > 1) undo(f.items_before, f.old_left, f.old_right);
                stack.pop_back();
                continue;
            }
            uint32_t slot = f.child_cursor++;
            NodeId w = t_.child_node[slot];
            EdgeId e = t_.child_edge[slot];

            Frame next{w, t_.child_begin(w), items_.size(), left_, right_};
            push_edge(e, f.node);
            advance(central_window(t_.dist[w]));
            if (t_.dist[w] >= min_target_) hubs.insert(select(t_.dist[w]));
            stack.push_back(next);
        }

        out.hubs.reserve(hubs.size());
        for (EdgeId e : hubs) {
            const Edge& ed = g_.edge(e);
            out.hubs.push_back(
                {ed.u, ed.v, 12ull * t_.dist[ed.u], 12ull * t_.dist[ed.v]});
        }
        sort(out.hubs.begin(), out.hubs.end(), [](const HubEntry& x, const HubEntry& y) {
            return tie(x.a, x.b) < tie(y.a, y.b);
        });
        return out;
    }

private:
    void push_edge(EdgeId e, NodeId from) {
        uint64_t len = 12ull * g_.edge_length(t_.metric, e);
        uint64_t start = path_.empty() ? 0 : path_.back().cum_end;
        PathEdge pe{e, g_.edge(e).u == from, start, start + len};
        const MinimaChain& chain = rho_.chain(e);
        if (pe.fwd) {
            for (const ChainEntry& c : chain.entries)
                items_.push_back({start + c.pos, {c.value, e, c.pos}});
        } else {
            for (size_t i = chain.entries.size(); i-- > 0;) {
                const ChainEntry& c = chain.entries[i];
                items_.push_back({start + (len - c.pos + 1), {c.value, e, c.pos}});
            }
        }
        path_.push_back(pe);
    }

    void advance(const WindowBounds& w) {
        while (right_ < items_.size() && items_[right_].pos <= w.hi) {
            active_.insert(items_[right_].key);
            right_++;
        }
        while (left_ < right_ && items_[left_].pos < w.lo) {
            active_.erase(items_[left_].key);
            left_++;
        }
    }

    void undo(size_t items_before, size_t old_left, size_t old_right) {
        for (size_t i = old_left; i < min(old_right, left_); i++) active_.insert(items_[i].key);
        for (size_t i = max(old_right, left_); i < right_; i++) active_.erase(items_[i].key);
        left_ = old_left;
        right_ = old_right;
        items_.resize(items_before);
        path_.pop_back();
    }

    EdgeId select(Dist metric_dist) {
        WindowBounds w = central_window(metric_dist);
        size_t first = edge_at(path_, w.lo);
        size_t last = edge_at(path_, w.hi);
        if (first == last) {
            const PathEdge& pe = path_[first];
            if (w.lo >= pe.cum_start + 2 && w.hi <= pe.cum_end - 1) return pe.edge;
        }
        if (active_.empty()) throw VerifyError("boundary window holds no chain entry");
        return active_.begin()->edge;
    }

    const WeightedGraph& g_;
    const RhoModel& rho_;
    const ShortestPathTree& t_;
    Dist min_target_;
    vector<PathEdge> path_;
    vector<ScanItem> items_;
    size_t left_ = 0, right_ = 0;
    set<RhoKey> active_;
};

}  // namespace

HubSet build_hub_set(const WeightedGraph& g, const RhoModel& rho, const ShortestPathTree& t,
                     Dist min_target_dist) {
    assert(t.metric == rho.metric());
    return WindowScan(g, rho, t, min_target_dist).run();
}

Labeling build_labeling(const WeightedGraph& g, uint64_t seed, unsigned threads) {
    Labeling l;
    l.n = g.node_count();
    l.seed = seed;
    l.fingerprint = graph_fingerprint(g);
    l.sets.resize(l.n);
    RhoModel rho(g, seed, WeightedGraph::BASE_METRIC);
    parallel_for(l.n, threads, [&](size_t u) {
        ShortestPathTree t = build_shortest_path_tree(g, static_cast<NodeId>(u));
        l.sets[u] = build_hub_set(g, rho, t);
    });
    return l;
}

Dist query(const Labeling& l, NodeId u, NodeId v) {
    if (u >= l.n || v >= l.n) throw ParamError("query node out of range");
    if (u == v) return 0;
    const auto& a = l.sets[u].hubs;
    const auto& b = l.sets[v].hubs;
    Dist best = INF_DIST;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto ka = make_pair(a[i].a, a[i].b);
        auto kb = make_pair(b[j].a, b[j].b);
        if (ka < kb)
            i++;
        else if (kb < ka)
            j++;
        else {
            best = min(best, min(a[i].da + b[j].da, a[i].db + b[j].db));
            i++;
            j++;
        }
    }
    if (best == INF_DIST)
        throw VerifyError("no shared hub for nodes " + to_string(u + 1) + " and " +
                          to_string(v + 1) + ": labeling corrupt");
    assert(best % 12 == 0);
    return best / 12;
}

//--------------------------- serialization -------------------------

void write_labeling(const Labeling& l, ostream& out) {
    char fp[17];
    snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(l.fingerprint));
    out << "HUBLABELS 1 n=" << l.n << " seed=" << l.seed << " fp=" << fp << "\n";
    for (NodeId u = 0; u < l.n; u++) {
        const HubSet& s = l.sets[u];
        out << "L " << u + 1 << " " << s.hubs.size();
        for (const HubEntry& h : s.hubs)
            out << " " << h.a + 1 << " " << h.b + 1 << " " << h.da << " " << h.db;
        out << "\n";
    }
}

Labeling read_labeling(istream& in) {
    Labeling l;
    string line;
    if (!getline(in, line)) throw ParseError("empty label file", 1);
    try {
        istringstream hs(line);
        string magic, version, nfield, seedfield, fpfield;
        hs >> magic >> version >> nfield >> seedfield >> fpfield;
        if (!hs || magic != "HUBLABELS" || version != "1" || nfield.rfind("n=", 0) != 0 ||
            seedfield.rfind("seed=", 0) != 0 || fpfield.rfind("fp=", 0) != 0)
            throw ParseError("bad label file header", 1);
        l.n = static_cast<uint32_t>(stoul(nfield.substr(2)));
        l.seed = stoull(seedfield.substr(5));
        l.fingerprint = stoull(fpfield.substr(3), nullptr, 16);
    } catch (const logic_error&) {
        throw ParseError("bad label file header", 1);
    }
    l.sets.resize(l.n);
    for (NodeId u = 0; u < l.n; u++) {
        if (!getline(in, line)) throw ParseError("truncated label file", 2 + u);
        istringstream ls(line);
        string tag;
        uint64_t node, h;
        ls >> tag >> node >> h;
        if (!ls || tag != "L" || node != u + 1) throw ParseError("bad label record", 2 + u);
        HubSet& s = l.sets[u];
        s.owner = u;
        s.hubs.resize(h);
        for (uint64_t i = 0; i < h; i++) {
            uint64_t a, b;
            ls >> a >> b >> s.hubs[i].da >> s.hubs[i].db;
            if (!ls || a < 1 || b < 1 || a > l.n || b > l.n || a >= b)
                throw ParseError("bad hub entry", 2 + u);
            s.hubs[i].a = static_cast<NodeId>(a - 1);
            s.hubs[i].b = static_cast<NodeId>(b - 1);
            if (i > 0 && tie(s.hubs[i - 1].a, s.hubs[i - 1].b) >= tie(s.hubs[i].a, s.hubs[i].b))
                throw ParseError("hub entries out of order", 2 + u);
        }
    }
    return l;
}

LabelVerifyReport verify_labeling(const WeightedGraph& g, const Labeling& l, bool exhaustive,
                                  uint64_t pairs, uint64_t seed) {
    LabelVerifyReport rep;
    uint32_t n = g.node_count();
    if (exhaustive) {
        for (NodeId u = 0; u < n; u++) {
            vector<Dist> oracle = dijkstra_distances(g, u);
            for (NodeId v = u; v < n; v++) {
                rep.pairs++;
                Dist got = query(l, u, v);
                if (got != oracle[v]) {
                    rep.mismatches++;
                    if (rep.samples.size() < 16) rep.samples.emplace_back(u, v, got, oracle[v]);
                }
            }
        }
        return rep;
    }
    // sampled pairs, grouped by source so each source runs one Dijkstra
    vector<pair<NodeId, NodeId>> sample(pairs);
    for (uint64_t i = 0; i < pairs; i++) {
        sample[i] = {static_cast<NodeId>(prf64(seed, 0xa1, i) % n),
                     static_cast<NodeId>(prf64(seed, 0xa2, i) % n)};
    }
    sort(sample.begin(), sample.end());
    vector<Dist> oracle;
    NodeId current = NO_NODE;
    for (auto [u, v] : sample) {
        if (u != current) {
            oracle = dijkstra_distances(g, u);
            current = u;
        }
        rep.pairs++;
        Dist got = query(l, u, v);
        if (got != oracle[v]) {
            rep.mismatches++;
            if (rep.samples.size() < 16) rep.samples.emplace_back(u, v, got, oracle[v]);
        }
    }
    return rep;
}

LabelSizeStats label_size_stats(const Labeling& l) {
    LabelSizeStats st;
    if (l.sets.empty()) return st;
    st.min = UINT32_MAX;
    vector<pair<uint32_t, uint32_t>> hist;
    for (const HubSet& s : l.sets) {
        auto size = static_cast<uint32_t>(s.hubs.size());
        st.total += size;
        st.min = min(st.min, size);
        st.max = max(st.max, size);
        hist.emplace_back(size, 1);
    }
    st.mean = static_cast<double>(st.total) / static_cast<double>(l.sets.size());
    sort(hist.begin(), hist.end());
    for (auto [size, c] : hist) {
        if (!st.histogram.empty() && st.histogram.back().first == size)
            st.histogram.back().second += c;
        else
            st.histogram.emplace_back(size, c);
    }
    return st;
}

}  // namespace skeledim
