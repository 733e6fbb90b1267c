#include "fogsched/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fogsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
    int to;
    int cap;
    double cost;
    int twin;
};

struct FlowGraph {
    std::vector<std::vector<int>> adj;
    std::vector<Edge> edges;

    explicit FlowGraph(int n) : adj(n) {}

    void add(int u, int v, int cap, double cost) {
        adj[u].push_back(static_cast<int>(edges.size()));
        edges.push_back({v, cap, cost, static_cast<int>(edges.size()) + 1});
        adj[v].push_back(static_cast<int>(edges.size()));
        edges.push_back({u, 0, -cost, static_cast<int>(edges.size()) - 1});
    }
};

} // namespace

MatchResult solve_b_matching(const Mat& weights, int fog_cap) {
    const int n = weights.rows;
    const int m = weights.cols;
    const int src = 0;
    const int snk = n + m + 1;
    const int nodes = n + m + 2;
    FlowGraph g(nodes);

    for (int i = 0; i < n; ++i) g.add(src, 1 + i, 1, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (weights(i, j) > 0.0) g.add(1 + i, 1 + n + j, 1, -weights(i, j));
    for (int j = 0; j < m; ++j) g.add(1 + n + j, snk, fog_cap, 0.0);

    // Initial potentials via one topological pass (the residual starts acyclic:
    // src -> wd -> fog -> snk).
    std::vector<double> pot(nodes, 0.0);
    for (int j = 0; j < m; ++j) {
        double best = 0.0; // fog unreachable => potential irrelevant, keep 0
        bool reach = false;
        for (int i = 0; i < n; ++i)
            if (weights(i, j) > 0.0) {
                best = reach ? std::min(best, -weights(i, j)) : -weights(i, j);
                reach = true;
            }
        if (reach) pot[1 + n + j] = best;
    }
    double sink_best = 0.0;
    for (int j = 0; j < m; ++j) sink_best = std::min(sink_best, pot[1 + n + j]);
    pot[snk] = sink_best;

    std::vector<double> dist(nodes);
    std::vector<int> prev_edge(nodes);
    std::vector<char> done(nodes);

    while (true) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev_edge.begin(), prev_edge.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        dist[src] = 0.0;
        // dense Dijkstra on reduced costs; instance sizes stay tiny
        for (int iter = 0; iter < nodes; ++iter) {
            int u = -1;
            for (int v = 0; v < nodes; ++v)
                if (!done[v] && dist[v] < kInf && (u == -1 || dist[v] < dist[u])) u = v;
            if (u == -1) break;
            done[u] = 1;
            for (int eid : g.adj[u]) {
                const Edge& e = g.edges[eid];
                if (e.cap <= 0) continue;
                const double red = std::max(e.cost + pot[u] - pot[e.to], 0.0);
                if (dist[u] + red < dist[e.to]) {
                    dist[e.to] = dist[u] + red;
                    prev_edge[e.to] = eid;
                }
            }
        }
        if (dist[snk] >= kInf) break;

        double true_cost = 0.0;
        for (int v = snk; v != src;) {
            const Edge& e = g.edges[prev_edge[v]];
            true_cost += e.cost;
            v = g.edges[e.twin].to;
        }
        if (true_cost >= 0.0) break; // further matches no longer pay

        for (int v = 0; v < nodes; ++v)
            if (dist[v] < kInf) pot[v] += std::min(dist[v], dist[snk]);
        for (int v = snk; v != src;) {
            Edge& e = g.edges[prev_edge[v]];
            e.cap -= 1;
            g.edges[e.twin].cap += 1;
            v = g.edges[e.twin].to;
        }
    }

    MatchResult res;
    res.wd_to_fog.assign(n, -1);
    for (int u = 1; u <= n; ++u) {
        for (int eid : g.adj[u]) {
            const Edge& e = g.edges[eid];
            // forward wd->fog edge carrying flow has residual cap 0
            if (e.to >= 1 + n && e.to < 1 + n + m && e.cost < 0.0 && e.cap == 0) {
                res.wd_to_fog[u - 1] = e.to - 1 - n;
                res.value += -e.cost;
            }
        }
    }
    return res;
}

} // namespace fogsched
