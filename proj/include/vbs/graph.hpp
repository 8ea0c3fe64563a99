#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vbs/types.hpp"

namespace vbs {

// Undirected edge with multiplicity. Canonical form has a < b; parallel
// edges are expressed through the multiplicity, never by duplicate records.
struct Edge {
    VertexId a = 0;
    VertexId b = 0;
    int multiplicity = 1;

    std::pair<VertexId, VertexId> key() const { return {a, b}; }
};

struct MultiGraph {
    std::vector<VertexId> vertices;  // ascending, unique
    std::vector<Edge> edges;         // canonical (a < b), sorted by (a, b)
    bool connected = true;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
    bool has_vertex(VertexId v) const;
    int vertex_index(VertexId v) const;  // position in `vertices`, -1 if absent

    // number of incident edges (coordination number z_l)
    int degree(VertexId v) const;
    // sum of incident multiplicities
    int multiplicity_sum(VertexId v) const;
};

// Per-vertex doubled spin, aligned with MultiGraph::vertices.
struct SpinAssignment {
    std::vector<TwiceSpin> twice_spin;

    TwiceSpin at(const MultiGraph& g, VertexId v) const;
};

struct Cut {
    std::vector<VertexId> block;         // ascending
    std::vector<VertexId> environment;   // ascending
    std::vector<Edge> cut_edges;         // one endpoint on each side
    std::vector<VertexId> boundary_block;
    std::vector<VertexId> boundary_env;

    std::size_t block_size() const { return block.size(); }        // N_b
    std::size_t boundary_size() const { return boundary_block.size(); }  // L
    bool in_block(VertexId v) const;
    // sum of cut-edge multiplicities incident to a boundary vertex
    int cut_multiplicity(VertexId v) const;
};

// Result of parsing a graph file: the graph itself plus optional directives.
struct ParsedGraph {
    MultiGraph graph;
    std::vector<VertexId> default_block;        // `block` directive, may be empty
    std::map<VertexId, TwiceSpin> spin_overrides;  // `spin` directive (testing only)
};

// Line-oriented graph file format:
//   # comment
//   e <k> <l> <M>       edge, vertices implicitly declared
//   v <id>              isolated vertex declaration
//   block <id> ...      default block for the CLI
//   spin <id> <2S>      spin override (negative tests of the uniqueness check)
ParsedGraph parse_graph(const std::string& text);

// 2S_l = sum of incident multiplicities at every vertex.
SpinAssignment infer_spins(const MultiGraph& g);

// Applies `spin` overrides on top of inferred values.
SpinAssignment apply_overrides(const MultiGraph& g, const SpinAssignment& s,
                               const std::map<VertexId, TwiceSpin>& overrides);

struct UniquenessCheck {
    bool unique = false;
    Eigen::VectorXi residual;  // 2S - incidence * M, one entry per vertex
};

// Evaluates 2S - I*M with the vertex-edge incidence matrix; integer exact.
UniquenessCheck check_uniqueness(const MultiGraph& g, const SpinAssignment& s);

// N x M incidence matrix; each column has exactly two unit entries.
Eigen::MatrixXi incidence_matrix(const MultiGraph& g);

Cut cut_graph(const MultiGraph& g, const std::vector<VertexId>& block);

// Subgraph induced by a vertex subset (edges with both endpoints inside).
MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<VertexId>& verts);

}  // namespace vbs
