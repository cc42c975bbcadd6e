#include "chargeplan/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "chargeplan/csvio.hpp"
#include "chargeplan/errors.hpp"

namespace chargeplan {

int HighwayGraph::index_of(const std::string& node_id) const {
    auto it = std::lower_bound(node_ids.begin(), node_ids.end(), node_id, natural_less);
    if (it != node_ids.end() && *it == node_id) {
        return static_cast<int>(it - node_ids.begin());
    }
    return -1;
}

HighwayGraphBuilder& HighwayGraphBuilder::add_node(const std::string& id, GeoPoint pos) {
    nodes_.emplace_back(id, pos);
    return *this;
}

HighwayGraphBuilder& HighwayGraphBuilder::add_arc(const std::string& arc_id,
                                                  const std::string& from, const std::string& to,
                                                  double length_m,
                                                  std::vector<GeoPoint> polyline) {
    arcs_.push_back({arc_id, from, to, length_m, std::move(polyline)});
    return *this;
}

HighwayGraph HighwayGraphBuilder::build() const {
    HighwayGraph g;
    g.mode = mode_;

    std::vector<std::pair<std::string, GeoPoint>> nodes = nodes_;
    std::sort(nodes.begin(), nodes.end(),
              [](const auto& a, const auto& b) { return natural_less(a.first, b.first); });
    for (size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i].first == nodes[i - 1].first) {
            fail(Errc::malformed_file, "duplicate node id '" + nodes[i].first + "'");
        }
    }
    for (const auto& [id, pos] : nodes) {
        if (!valid_coordinates(pos, mode_)) {
            fail(Errc::malformed_file, "node '" + id + "' has invalid coordinates");
        }
        g.node_ids.push_back(id);
        g.node_pos.push_back(pos);
    }
    g.adj.resize(g.node_ids.size());

    std::set<std::pair<int, int>> seen;
    for (const auto& a : arcs_) {
        if (a.from == a.to) {
            fail(Errc::self_loop, "arc '" + a.arc_id + "' connects node '" + a.from +
                                      "' to itself");
        }
        const int u = g.index_of(a.from);
        const int v = g.index_of(a.to);
        if (u < 0 || v < 0) {
            fail(Errc::dangling_arc, "arc '" + a.arc_id + "' references missing node '" +
                                         (u < 0 ? a.from : a.to) + "'");
        }
        if (!(a.length_m > 0.0) || !std::isfinite(a.length_m)) {
            fail(Errc::malformed_file, "arc '" + a.arc_id + "' has non-positive length");
        }
        const auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second) {
            fail(Errc::malformed_file, "duplicate arc between '" + a.from + "' and '" + a.to + "'");
        }
        HighwayGraph::Arc arc;
        arc.arc_id = a.arc_id;
        arc.u = u;
        arc.v = v;
        arc.length_m = a.length_m;
        arc.polyline = a.polyline;
        const int ai = static_cast<int>(g.arcs.size());
        g.arcs.push_back(std::move(arc));
        g.adj[u].emplace_back(v, ai);
        g.adj[v].emplace_back(u, ai);
    }
    // Deterministic neighbor order independent of arc file order.
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

std::vector<int> connected_components(const HighwayGraph& g) {
    const int n = g.num_nodes();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& [v, ai] : g.adj[u]) {
                if (comp[v] < 0) {
                    comp[v] = next;
                    q.push(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

bool is_connected(const HighwayGraph& g) {
    if (g.num_nodes() <= 1) return true;
    const auto comp = connected_components(g);
    return *std::max_element(comp.begin(), comp.end()) == 0;
}

namespace {

[[noreturn]] void throw_disconnected(const HighwayGraph& g) {
    const auto comp = connected_components(g);
    const int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::ostringstream msg;
    msg << "graph splits into " << ncomp << " components:";
    for (int c = 0; c < ncomp; ++c) {
        msg << (c == 0 ? " " : " | ");
        int shown = 0;
        int size = 0;
        for (int i = 0; i < g.num_nodes(); ++i) {
            if (comp[i] != c) continue;
            ++size;
            if (shown < 4) {
                msg << (shown ? "," : "") << g.node_ids[i];
                ++shown;
            }
        }
        if (size > shown) msg << ",... (" << size << " nodes)";
    }
    fail(Errc::disconnected_graph, msg.str());
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void bfs_distances(const HighwayGraph& g, int s, std::vector<double>& dist) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[s] = 0.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (const auto& [v, ai] : g.adj[u]) {
            if (dist[v] == kInf) {
                dist[v] = dist[u] + 1.0;
                q.push(v);
            }
        }
    }
}

void dijkstra_distances(const HighwayGraph& g, int s, std::vector<double>& dist) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[u]) continue;
        for (const auto& [v, ai] : g.adj[u]) {
            const double nd = du + g.arcs[ai].length_m;
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
}

} // namespace

DistanceMatrix shortest_path_lengths(const HighwayGraph& g, bool weighted) {
    const int n = g.num_nodes();
    if (!is_connected(g)) throw_disconnected(g);
    DistanceMatrix m;
    m.n = n;
    m.d.assign(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> dist(n);
    for (int s = 0; s < n; ++s) {
        if (weighted) {
            dijkstra_distances(g, s, dist);
        } else {
            bfs_distances(g, s, dist);
        }
        for (int t = 0; t < n; ++t) m.at(s, t) = dist[t];
    }
    return m;
}

std::vector<double> degree_centrality(const HighwayGraph& g, DegreeNorm norm) {
    const int n = g.num_nodes();
    if (n < 2) fail(Errc::too_few_nodes, "degree centrality needs at least 2 nodes");
    double divisor = 0.0;
    if (norm == DegreeNorm::node_count) {
        divisor = n - 1;
    } else {
        for (int i = 0; i < n; ++i) divisor = std::max(divisor, double(g.degree(i)));
        if (divisor == 0.0) divisor = 1.0; // edgeless graph: all zeros
    }
    std::vector<double> dc(n);
    for (int i = 0; i < n; ++i) dc[i] = g.degree(i) / divisor;
    return dc;
}

std::vector<double> closeness_centrality(const HighwayGraph& g, bool weighted, bool normalized) {
    const int n = g.num_nodes();
    if (n < 2) fail(Errc::too_few_nodes, "closeness centrality needs at least 2 nodes");
    const DistanceMatrix m = shortest_path_lengths(g, weighted);
    std::vector<double> cc(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j != i) sum += m.at(i, j);
        }
        cc[i] = normalized ? (n - 1) / sum : 1.0 / sum;
    }
    return cc;
}

std::vector<double> betweenness_centrality(const HighwayGraph& g, bool weighted) {
    const int n = g.num_nodes();
    if (n < 2) fail(Errc::too_few_nodes, "betweenness centrality needs at least 2 nodes");
    if (!is_connected(g)) throw_disconnected(g);
    std::vector<double> bc(n, 0.0);
    if (n == 2) return bc;

    // Brandes accumulation from every source; sources visited in index order
    // so the floating-point reduction is deterministic.
    std::vector<double> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::vector<int>> pred(n);
    std::vector<int> order; // nodes in non-decreasing distance from s
    order.reserve(n);

    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        order.clear();
        dist[s] = 0.0;
        sigma[s] = 1.0;

        if (!weighted) {
            std::queue<int> q;
            q.push(s);
            while (!q.empty()) {
                const int u = q.front();
                q.pop();
                order.push_back(u);
                for (const auto& [v, ai] : g.adj[u]) {
                    if (dist[v] == kInf) {
                        dist[v] = dist[u] + 1.0;
                        q.push(v);
                    }
                    if (dist[v] == dist[u] + 1.0) {
                        sigma[v] += sigma[u];
                        pred[v].push_back(u);
                    }
                }
            }
        } else {
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            std::vector<char> done(n, 0);
            pq.push({0.0, s});
            while (!pq.empty()) {
                const auto [du, u] = pq.top();
                pq.pop();
                if (done[u]) continue;
                done[u] = 1;
                order.push_back(u);
                for (const auto& [v, ai] : g.adj[u]) {
                    const double nd = du + g.arcs[ai].length_m;
                    if (nd < dist[v]) {
                        dist[v] = nd;
                        sigma[v] = sigma[u];
                        pred[v].assign(1, u);
                        pq.push({nd, v});
                    } else if (nd == dist[v]) {
                        sigma[v] += sigma[u];
                        pred[v].push_back(u);
                    }
                }
            }
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w = *it;
            for (const int v : pred[w]) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) bc[w] += delta[w];
        }
    }

    // Each unordered pair was accumulated twice (once per endpoint as source).
    const double divisor = double(n - 1) * double(n - 2); // == 2 * (N-1)(N-2)/2
    for (double& v : bc) v /= divisor;
    return bc;
}

std::vector<std::string> CentralityReport::top(int k) const {
    std::vector<std::string> out;
    const int limit = std::min<int>(k, static_cast<int>(rows.size()));
    out.reserve(limit);
    for (int i = 0; i < limit; ++i) out.push_back(rows[i].node_id);
    return out;
}

CentralityReport composite_rank(const HighwayGraph& g, const CompositeOptions& opts) {
    const auto dc = degree_centrality(g, opts.dc_norm);
    const auto cc = closeness_centrality(g, opts.weighted, opts.normalized_closeness);
    const auto bc = betweenness_centrality(g, opts.weighted);

    const int n = g.num_nodes();
    CentralityReport report;
    report.rows.resize(n);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    // Score descending, ties by node id ascending. The composite is the
    // plain sum of the three indicators.
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double sa = dc[a] + cc[a] + bc[a];
        const double sb = dc[b] + cc[b] + bc[b];
        if (sa != sb) return sa > sb;
        return natural_less(g.node_ids[a], g.node_ids[b]);
    });
    for (int r = 0; r < n; ++r) {
        const int i = idx[r];
        auto& row = report.rows[r];
        row.node_id = g.node_ids[i];
        row.dc = dc[i];
        row.cc = cc[i];
        row.bc = bc[i];
        row.score = dc[i] + cc[i] + bc[i];
        row.rank = r + 1;
    }
    return report;
}

} // namespace chargeplan
