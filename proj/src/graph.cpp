#include "vbs/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace vbs {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::SelfLoop: return "SelfLoop";
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
        case Errc::UnknownVertexInBlockDirective: return "UnknownVertexInBlockDirective";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::EmptyBlock: return "EmptyBlock";
        case Errc::BlockIsWholeGraph: return "BlockIsWholeGraph";
        case Errc::BlockTooSmall: return "BlockTooSmall";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DimensionGuard: return "DimensionGuard";
        case Errc::JOutOfRange: return "JOutOfRange";
        case Errc::LOutOfRange: return "LOutOfRange";
        case Errc::MissingCoefficient: return "MissingCoefficient";
        case Errc::NonPositiveCoefficient: return "NonPositiveCoefficient";
        case Errc::UniquenessViolated: return "UniquenessViolated";
        case Errc::NotBasicModel: return "NotBasicModel";
        case Errc::NormZero: return "NormZero";
        case Errc::NonPositiveAlpha: return "NonPositiveAlpha";
        case Errc::InsufficientSamples: return "InsufficientSamples";
        case Errc::SpectrumMismatch: return "SpectrumMismatch";
        case Errc::NumericalInstability: return "NumericalInstability";
    }
    return "UnknownError";
}

bool MultiGraph::has_vertex(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

int MultiGraph::vertex_index(VertexId v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return static_cast<int>(it - vertices.begin());
}

int MultiGraph::degree(VertexId v) const {
    int z = 0;
    for (const Edge& e : edges)
        if (e.a == v || e.b == v) ++z;
    return z;
}

int MultiGraph::multiplicity_sum(VertexId v) const {
    int m = 0;
    for (const Edge& e : edges)
        if (e.a == v || e.b == v) m += e.multiplicity;
    return m;
}

TwiceSpin SpinAssignment::at(const MultiGraph& g, VertexId v) const {
    int i = g.vertex_index(v);
    if (i < 0) throw Error(Errc::DimensionMismatch, "vertex not in graph");
    return twice_spin[static_cast<std::size_t>(i)];
}

bool Cut::in_block(VertexId v) const {
    return std::binary_search(block.begin(), block.end(), v);
}

int Cut::cut_multiplicity(VertexId v) const {
    int m = 0;
    for (const Edge& e : cut_edges)
        if (e.a == v || e.b == v) m += e.multiplicity;
    return m;
}

namespace {

bool is_connected(const std::vector<VertexId>& vertices, const std::vector<Edge>& edges) {
    if (vertices.size() <= 1) return true;
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const Edge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::set<VertexId> seen;
    std::queue<VertexId> frontier;
    frontier.push(vertices.front());
    seen.insert(vertices.front());
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (VertexId w : adj[v])
            if (seen.insert(w).second) frontier.push(w);
    }
    return seen.size() == vertices.size();
}

long long parse_int(const std::string& tok, int line) {
    std::size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw Error(Errc::SyntaxError, "expected integer, got '" + tok + "'", line);
    }
    if (pos != tok.size())
        throw Error(Errc::SyntaxError, "expected integer, got '" + tok + "'", line);
    return value;
}

}  // namespace

ParsedGraph parse_graph(const std::string& text) {
    ParsedGraph out;
    std::set<VertexId> verts;
    std::set<std::pair<VertexId, VertexId>> seen_pairs;
    std::vector<Edge> edges;
    std::vector<VertexId> block_directive;
    std::map<VertexId, TwiceSpin> overrides;

    std::istringstream stream(text);
    std::string linebuf;
    int lineno = 0;
    while (std::getline(stream, linebuf)) {
        ++lineno;
        std::istringstream ls(linebuf);
        std::string head;
        if (!(ls >> head)) continue;       // blank line
        if (head[0] == '#') continue;      // comment

        if (head == "e") {
            std::string ka, kb, km;
            if (!(ls >> ka >> kb >> km))
                throw Error(Errc::SyntaxError, "edge line needs 'e <k> <l> <M>'", lineno);
            long long a = parse_int(ka, lineno);
            long long b = parse_int(kb, lineno);
            long long m = parse_int(km, lineno);
            if (a < 0 || b < 0)
                throw Error(Errc::SyntaxError, "vertex ids must be non-negative", lineno);
            if (a == b)
                throw Error(Errc::SelfLoop, "self-loop at vertex " + std::to_string(a), lineno);
            if (m < 1)
                throw Error(Errc::NonPositiveMultiplicity,
                            "multiplicity must be >= 1 on edge (" + ka + "," + kb + ")", lineno);
            Edge e{static_cast<VertexId>(std::min(a, b)), static_cast<VertexId>(std::max(a, b)),
                   static_cast<int>(m)};
            if (!seen_pairs.insert(e.key()).second)
                throw Error(Errc::DuplicateEdge,
                            "duplicate edge record for (" + ka + "," + kb + ")", lineno);
            edges.push_back(e);
            verts.insert(e.a);
            verts.insert(e.b);
        } else if (head == "v") {
            std::string kid;
            if (!(ls >> kid))
                throw Error(Errc::SyntaxError, "vertex line needs 'v <id>'", lineno);
            long long id = parse_int(kid, lineno);
            if (id < 0) throw Error(Errc::SyntaxError, "vertex ids must be non-negative", lineno);
            verts.insert(static_cast<VertexId>(id));
        } else if (head == "block") {
            std::string kid;
            bool any = false;
            while (ls >> kid) {
                block_directive.push_back(static_cast<VertexId>(parse_int(kid, lineno)));
                any = true;
            }
            if (!any) throw Error(Errc::SyntaxError, "block directive needs vertex ids", lineno);
        } else if (head == "spin") {
            std::string kid, ks;
            if (!(ls >> kid >> ks))
                throw Error(Errc::SyntaxError, "spin line needs 'spin <id> <2S>'", lineno);
            long long id = parse_int(kid, lineno);
            long long ts = parse_int(ks, lineno);
            if (ts < 1) throw Error(Errc::SyntaxError, "2S must be >= 1", lineno);
            overrides[static_cast<VertexId>(id)] = static_cast<TwiceSpin>(ts);
        } else {
            throw Error(Errc::SyntaxError, "unknown directive '" + head + "'", lineno);
        }
    }

    for (VertexId v : block_directive)
        if (!verts.count(v))
            throw Error(Errc::UnknownVertexInBlockDirective,
                        "block directive names vertex " + std::to_string(v));
    for (const auto& [v, ts] : overrides) {
        (void)ts;
        if (!verts.count(v))
            throw Error(Errc::SyntaxError, "spin override names unknown vertex " + std::to_string(v));
    }

    std::sort(edges.begin(), edges.end(),
              [](const Edge& x, const Edge& y) { return x.key() < y.key(); });

    out.graph.vertices.assign(verts.begin(), verts.end());
    out.graph.edges = std::move(edges);
    out.graph.connected = is_connected(out.graph.vertices, out.graph.edges);
    std::sort(block_directive.begin(), block_directive.end());
    block_directive.erase(std::unique(block_directive.begin(), block_directive.end()),
                          block_directive.end());
    out.default_block = std::move(block_directive);
    out.spin_overrides = std::move(overrides);
    return out;
}

SpinAssignment infer_spins(const MultiGraph& g) {
    SpinAssignment s;
    s.twice_spin.reserve(g.vertices.size());
    for (VertexId v : g.vertices)
        s.twice_spin.push_back(static_cast<TwiceSpin>(g.multiplicity_sum(v)));
    return s;
}

SpinAssignment apply_overrides(const MultiGraph& g, const SpinAssignment& s,
                               const std::map<VertexId, TwiceSpin>& overrides) {
    SpinAssignment out = s;
    for (const auto& [v, ts] : overrides) {
        int i = g.vertex_index(v);
        if (i < 0) throw Error(Errc::SyntaxError, "spin override names unknown vertex");
        out.twice_spin[static_cast<std::size_t>(i)] = ts;
    }
    return out;
}

Eigen::MatrixXi incidence_matrix(const MultiGraph& g) {
    Eigen::MatrixXi inc = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(g.vertex_count()),
                                                static_cast<Eigen::Index>(g.edge_count()));
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        inc(g.vertex_index(g.edges[j].a), static_cast<Eigen::Index>(j)) = 1;
        inc(g.vertex_index(g.edges[j].b), static_cast<Eigen::Index>(j)) = 1;
    }
    return inc;
}

UniquenessCheck check_uniqueness(const MultiGraph& g, const SpinAssignment& s) {
    UniquenessCheck out;
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::VectorXi twice_s(n);
    for (Eigen::Index i = 0; i < n; ++i) twice_s(i) = s.twice_spin[static_cast<std::size_t>(i)];

    Eigen::VectorXi m(static_cast<Eigen::Index>(g.edge_count()));
    for (std::size_t j = 0; j < g.edges.size(); ++j)
        m(static_cast<Eigen::Index>(j)) = g.edges[j].multiplicity;

    out.residual = twice_s - incidence_matrix(g) * m;
    out.unique = (out.residual.array() == 0).all();
    return out;
}

Cut cut_graph(const MultiGraph& g, const std::vector<VertexId>& block) {
    std::set<VertexId> bset(block.begin(), block.end());
    for (VertexId v : bset)
        if (!g.has_vertex(v))
            throw Error(Errc::UnknownVertexInBlockDirective,
                        "block names vertex " + std::to_string(v) + " not in graph");
    if (bset.empty()) throw Error(Errc::EmptyBlock, "block must be nonempty");
    if (bset.size() == g.vertex_count())
        throw Error(Errc::BlockIsWholeGraph, "environment must be nonempty");

    Cut cut;
    cut.block.assign(bset.begin(), bset.end());
    for (VertexId v : g.vertices)
        if (!bset.count(v)) cut.environment.push_back(v);

    std::set<VertexId> bb, be;
    for (const Edge& e : g.edges) {
        bool a_in = bset.count(e.a) != 0;
        bool b_in = bset.count(e.b) != 0;
        if (a_in == b_in) continue;
        cut.cut_edges.push_back(e);
        bb.insert(a_in ? e.a : e.b);
        be.insert(a_in ? e.b : e.a);
    }
    cut.boundary_block.assign(bb.begin(), bb.end());
    cut.boundary_env.assign(be.begin(), be.end());
    return cut;
}

MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<VertexId>& verts) {
    std::set<VertexId> keep(verts.begin(), verts.end());
    MultiGraph sub;
    for (VertexId v : g.vertices)
        if (keep.count(v)) sub.vertices.push_back(v);
    for (const Edge& e : g.edges)
        if (keep.count(e.a) && keep.count(e.b)) sub.edges.push_back(e);
    sub.connected = is_connected(sub.vertices, sub.edges);
    return sub;
}

}  // namespace vbs
