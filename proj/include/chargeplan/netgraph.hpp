#pragma once

#include <string>
#include <vector>

#include "chargeplan/geo.hpp"

namespace chargeplan {

// Undirected simple graph of highway junctions and road arcs. Nodes are
// stored in natural id order so every downstream computation is
// deterministic for a given input file.
struct HighwayGraph {
    struct Arc {
        std::string arc_id;
        int u = -1;
        int v = -1;
        double length_m = 0.0;
        std::vector<GeoPoint> polyline; // full geometry incl. endpoints; empty = chord u->v
    };

    CoordinateMode mode = CoordinateMode::wgs84;
    std::vector<std::string> node_ids; // index -> id, sorted by natural_less
    std::vector<GeoPoint> node_pos;
    std::vector<Arc> arcs;
    std::vector<std::vector<std::pair<int, int>>> adj; // node -> (neighbor, arc index)

    int num_nodes() const { return static_cast<int>(node_ids.size()); }
    int num_arcs() const { return static_cast<int>(arcs.size()); }
    int degree(int i) const { return static_cast<int>(adj[i].size()); }
    // -1 when the id is unknown.
    int index_of(const std::string& node_id) const;
};

class HighwayGraphBuilder {
public:
    explicit HighwayGraphBuilder(CoordinateMode mode = CoordinateMode::wgs84) : mode_(mode) {}

    HighwayGraphBuilder& add_node(const std::string& id, GeoPoint pos);
    HighwayGraphBuilder& add_arc(const std::string& arc_id, const std::string& from,
                                 const std::string& to, double length_m,
                                 std::vector<GeoPoint> polyline = {});

    // Validates simplicity (no self-loops, no duplicate arcs, endpoints
    // present, positive lengths) and produces the immutable graph.
    HighwayGraph build() const;

private:
    struct PendingArc {
        std::string arc_id, from, to;
        double length_m;
        std::vector<GeoPoint> polyline;
    };
    CoordinateMode mode_;
    std::vector<std::pair<std::string, GeoPoint>> nodes_;
    std::vector<PendingArc> arcs_;
};

// Component labels (0-based) per node; used for DisconnectedGraph reporting.
std::vector<int> connected_components(const HighwayGraph& g);
bool is_connected(const HighwayGraph& g);

// Dense all-pairs distance matrix.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> d; // row-major

    double at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
    double& at(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }
};

// Hop-count metric when weighted=false, length_m metric when true.
// Throws DisconnectedGraph naming the component split when unreachable
// pairs exist.
DistanceMatrix shortest_path_lengths(const HighwayGraph& g, bool weighted);

enum class DegreeNorm {
    node_count, // deg / (N-1)
    max_degree, // deg / max degree; used for the composite report
};

std::vector<double> degree_centrality(const HighwayGraph& g,
                                      DegreeNorm norm = DegreeNorm::node_count);

// Normalized closeness (N-1)/sum(d) by default; normalized=false gives the
// raw 1/sum(d) form.
std::vector<double> closeness_centrality(const HighwayGraph& g, bool weighted = false,
                                         bool normalized = true);

// Brandes accumulation over all sources, multiplicity-aware, divided by
// (N-1)(N-2)/2 for the undirected normalization.
std::vector<double> betweenness_centrality(const HighwayGraph& g, bool weighted = false);

struct CompositeOptions {
    bool weighted = false;
    DegreeNorm dc_norm = DegreeNorm::max_degree;
    bool normalized_closeness = true;
};

struct CentralityRow {
    std::string node_id;
    double dc = 0, cc = 0, bc = 0, score = 0;
    int rank = 0; // 1-based
};

struct CentralityReport {
    std::vector<CentralityRow> rows; // sorted by rank ascending

    std::vector<std::string> top(int k) const;
};

// score = dc + cc + bc, ranked descending, ties broken by node id ascending.
CentralityReport composite_rank(const HighwayGraph& g, const CompositeOptions& opts = {});

} // namespace chargeplan
