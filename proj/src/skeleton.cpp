#include "skeledim/skeleton.hpp"

#include <algorithm>
#include <cmath>

using namespace std;

namespace skeledim {

namespace {

// A point on edge (v, w) at distance t past v is kept while
// (len - t) + reach(w) >= alpha * (d(v) + t). Solving at equality gives
// the realized far radius (d(w) + reach(w)) * q / (p + q) for
// alpha = p/q; a full edge corresponds to that radius reaching d(w).
DiscreteSkeleton compute_impl(const WeightedGraph& g, const ShortestPathTree& t,
                              int reach_metric, Rat alpha) {
    DiscreteSkeleton s;
    s.root = t.root;
    s.reach_metric = reach_metric;
    s.alpha = alpha;
    if (reach_metric == t.metric) {
        s.metric_dist = t.dist;
        s.metric_reach = t.reach;
    } else {
        s.metric_dist = tree_distances(g, t, reach_metric);
        s.metric_reach = tree_reach(g, t, reach_metric);
    }

    const int64_t p = alpha.num, q = alpha.den;
    uint32_t n = g.node_count();
    s.node_kept.assign(n, 0);
    for (NodeId v = 0; v < n; v++) {
        // reach >= alpha * dist, exactly
        s.node_kept[v] = static_cast<__int128>(s.metric_reach[v]) * q >=
                         static_cast<__int128>(s.metric_dist[v]) * p;
    }
    assert(s.node_kept[t.root]);

    for (NodeId v : t.order) {
        if (!s.node_kept[v]) continue;
        for (uint32_t c = t.child_begin(v); c < t.child_end(v); c++) {
            NodeId w = t.child_node[c];
            EdgeId e = t.child_edge[c];
            Dist dv = s.metric_dist[v];
            Dist dw = s.metric_dist[w];
            if (s.node_kept[w]) {
                s.kept.push_back({e, v, w, dv, Rat(static_cast<int64_t>(dw)), true});
                continue;
            }
            Rat limit(static_cast<int64_t>(dw + s.metric_reach[w]) * q, p + q);
            if (limit > Rat(static_cast<int64_t>(dv)))
                s.kept.push_back({e, v, w, dv, limit, false});
        }
    }
    return s;
}

}  // namespace

DiscreteSkeleton compute_skeleton(const WeightedGraph& g, const ShortestPathTree& t,
                                  int reach_metric, Rat alpha) {
    if (alpha.num <= 0 || alpha > Rat(1)) throw ParamError("alpha must be in (0, 1]");
    return compute_impl(g, t, reach_metric, alpha);
}

DiscreteSkeleton compute_skeleton_any_alpha(const WeightedGraph& g, const ShortestPathTree& t,
                                            int reach_metric, Rat alpha) {
    if (alpha.num <= 0) throw ParamError("alpha must be positive");
    return compute_impl(g, t, reach_metric, alpha);
}

// An edge occupies the half-open radius interval (near_dist, far_limit].
// The profile is constant between consecutive distinct endpoints and its
// value on (prev, cur] equals #(near < cur) - #(far < cur).
CutProfile skeleton_cut_profile(const DiscreteSkeleton& s) {
    CutProfile profile;
    if (s.kept.empty()) return profile;
    vector<Rat> lo, hi;
    lo.reserve(s.kept.size());
    hi.reserve(s.kept.size());
    for (const SkeletonEdge& e : s.kept) {
        lo.push_back(Rat(static_cast<int64_t>(e.near_dist)));
        hi.push_back(e.far_limit);
    }
    sort(lo.begin(), lo.end());
    sort(hi.begin(), hi.end());

    vector<Rat> points = lo;
    points.insert(points.end(), hi.begin(), hi.end());
    sort(points.begin(), points.end());
    points.erase(unique(points.begin(), points.end()), points.end());

    size_t li = 0, hi_i = 0;
    for (const Rat& r : points) {
        while (li < lo.size() && lo[li] < r) li++;
        while (hi_i < hi.size() && hi[hi_i] < r) hi_i++;
        uint32_t cut = static_cast<uint32_t>(li - hi_i);
        profile.breakpoints.push_back(r);
        profile.cut.push_back(cut);
        profile.width = max(profile.width, cut);
    }
    return profile;
}

uint32_t skeleton_width(const DiscreteSkeleton& s) { return skeleton_cut_profile(s).width; }

double integrated_skeleton_dimension(const DiscreteSkeleton& s, uint64_t cutoff_twelfths) {
    double sum = 0;
    for (const SkeletonEdge& e : s.kept) {
        uint64_t lo = 12ull * e.near_dist;
        // far limit in twelfths: floor(12 * far_limit)
        Rat far12 = e.far_limit * 12;
        uint64_t hi = static_cast<uint64_t>(far12.floor());
        lo = max(lo, cutoff_twelfths);
        if (hi > lo) sum += harmonic_range(lo, hi);
    }
    return sum;
}

SkeletonStats skeleton_dimension(const WeightedGraph& g, RootSelection sel, int reach_metric,
                                 Rat alpha, unsigned threads, bool with_isk,
                                 uint64_t isk_cutoff) {
    SkeletonStats stats;
    stats.reach_metric = reach_metric;
    stats.alpha = alpha;
    stats.isk_cutoff = isk_cutoff;
    uint32_t n = g.node_count();

    if (sel.all || sel.sample >= n) {
        stats.roots.resize(n);
        for (NodeId v = 0; v < n; v++) stats.roots[v] = v;
    } else {
        stats.sampled = true;
        vector<NodeId> ids(n);
        for (NodeId v = 0; v < n; v++) ids[v] = v;
        for (uint32_t i = 0; i < sel.sample; i++) {  // partial Fisher-Yates
            uint32_t j = i + static_cast<uint32_t>(prf64(sel.seed, STREAM_SHUFFLE, i) % (n - i));
            swap(ids[i], ids[j]);
        }
        stats.roots.assign(ids.begin(), ids.begin() + sel.sample);
        sort(stats.roots.begin(), stats.roots.end());
    }

    stats.widths.assign(stats.roots.size(), 0);
    if (with_isk) stats.isk.assign(stats.roots.size(), 0.0);
    parallel_for(stats.roots.size(), threads, [&](size_t i) {
        ShortestPathTree t = build_shortest_path_tree(g, stats.roots[i]);
        DiscreteSkeleton s = compute_skeleton_any_alpha(g, t, reach_metric, alpha);
        stats.widths[i] = skeleton_width(s);
        if (with_isk) stats.isk[i] = integrated_skeleton_dimension(s, isk_cutoff);
    });

    double wsum = 0;
    for (size_t i = 0; i < stats.roots.size(); i++) {
        stats.k = max(stats.k, stats.widths[i]);
        wsum += stats.widths[i];
    }
    stats.avg_width = stats.roots.empty() ? 0 : wsum / static_cast<double>(stats.roots.size());
    if (with_isk) {
        double isum = 0;
        for (double v : stats.isk) isum += v;
        stats.isk_avg = stats.roots.empty() ? 0 : isum / static_cast<double>(stats.roots.size());
    }
    return stats;
}

// far extremities of skeleton edges whose radius interval contains r'
static void collect_crossing(const DiscreteSkeleton& s, const Rat& radius,
                             vector<NodeId>& out) {
    for (const SkeletonEdge& e : s.kept) {
        if (Rat(static_cast<int64_t>(e.near_dist)) < radius && radius <= e.far_limit)
            out.push_back(e.far_node);
    }
}

vector<NodeId> doubling_cover(const WeightedGraph& g, NodeId u, Dist r, int metric) {
    if (r < 1) throw ParamError("cover radius must be >= 1");
    ShortestPathTree t = build_shortest_path_tree(g, u, metric);
    DiscreteSkeleton s = compute_skeleton(g, t, metric, Rat(1, 2));
    vector<NodeId> centers{u};
    collect_crossing(s, Rat(static_cast<int64_t>(2 * r), 3), centers);
    collect_crossing(s, Rat(static_cast<int64_t>(10 * r), 9), centers);
    sort(centers.begin(), centers.end());
    centers.erase(unique(centers.begin(), centers.end()), centers.end());
    return centers;
}

AlphaRelationReport alpha_relation_check(const WeightedGraph& g, Rat alpha, Rat beta,
                                         unsigned threads) {
    if (alpha.num <= 0 || beta > Rat(1) || beta < alpha)
        throw ParamError("need 0 < alpha <= beta <= 1");
    AlphaRelationReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    // third threshold (beta + 1) / (beta/alpha - 1); degenerate when
    // alpha == beta, where the first relation already forces equality
    if (alpha == beta) {
        rep.gamma = Rat(1);
        uint32_t k = skeleton_dimension(g, RootSelection::all_roots(), 0, alpha, threads).k;
        rep.k_alpha = rep.k_beta = k;
        rep.k_gamma = skeleton_dimension(g, RootSelection::all_roots(), 0, rep.gamma, threads).k;
        rep.ok = true;
        return rep;
    }
    rep.gamma = (beta + Rat(1)) / (beta / alpha - Rat(1));
    rep.k_alpha = skeleton_dimension(g, RootSelection::all_roots(), 0, alpha, threads).k;
    rep.k_beta = skeleton_dimension(g, RootSelection::all_roots(), 0, beta, threads).k;
    SkeletonStats gs;
    {
        // gamma may exceed 1; use the unrestricted width computation
        gs.widths.assign(g.node_count(), 0);
        vector<uint32_t>& w = gs.widths;
        parallel_for(g.node_count(), threads, [&](size_t i) {
            ShortestPathTree t = build_shortest_path_tree(g, static_cast<NodeId>(i));
            w[i] = skeleton_width(compute_skeleton_any_alpha(g, t, 0, rep.gamma));
        });
        for (uint32_t x : w) gs.k = max(gs.k, x);
    }
    rep.k_gamma = gs.k;
    rep.ok = rep.k_beta <= rep.k_alpha &&
             static_cast<uint64_t>(rep.k_alpha) <=
                 static_cast<uint64_t>(rep.k_beta) * static_cast<uint64_t>(rep.k_gamma);
    return rep;
}

}  // namespace skeledim
