#include "vbs/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace vbs {

namespace {

std::pair<VertexId, VertexId> edge_key(VertexId k, VertexId l) {
    return {std::min(k, l), std::max(k, l)};
}

}  // namespace

void EdgeCoefficients::set(VertexId k, VertexId l, TwiceSpin twice_j, double value) {
    table[edge_key(k, l)][twice_j] = value;
}

const std::map<TwiceSpin, double>* EdgeCoefficients::find(VertexId k, VertexId l) const {
    auto it = table.find(edge_key(k, l));
    return it == table.end() ? nullptr : &it->second;
}

EdgeCoefficients parse_coefficients(const std::string& text) {
    EdgeCoefficients out;
    std::istringstream stream(text);
    std::string linebuf;
    int lineno = 0;
    while (std::getline(stream, linebuf)) {
        ++lineno;
        std::istringstream ls(linebuf);
        std::string head;
        if (!(ls >> head)) continue;
        if (head[0] == '#') continue;
        if (head != "A")
            throw Error(Errc::SyntaxError, "unknown directive '" + head + "'", lineno);
        long long k, l, tj;
        double value;
        if (!(ls >> k >> l >> tj >> value))
            throw Error(Errc::SyntaxError, "coefficient line needs 'A <k> <l> <2J> <value>'",
                        lineno);
        out.set(static_cast<VertexId>(k), static_cast<VertexId>(l),
                static_cast<TwiceSpin>(tj), value);
    }
    return out;
}

std::map<TwiceSpin, double> resolve_edge_coefficients(const Edge& e, TwiceSpin ts_k,
                                                      TwiceSpin ts_l,
                                                      const EdgeCoefficients& coeffs) {
    const TwiceSpin tj_max = ts_k + ts_l;
    const TwiceSpin tj_min = tj_max - 2 * e.multiplicity + 2;
    if (tj_min < std::abs(ts_k - ts_l))
        throw Error(Errc::JOutOfRange,
                    "multiplicity exceeds 2*min(S_k,S_l) on edge (" + std::to_string(e.a) +
                        "," + std::to_string(e.b) + ")");

    std::map<TwiceSpin, double> resolved;
    const auto* user = coeffs.find(e.a, e.b);
    for (TwiceSpin tj = tj_min; tj <= tj_max; tj += 2) {
        double a = 1.0;
        if (user) {
            auto it = user->find(tj);
            if (it == user->end())
                throw Error(Errc::MissingCoefficient,
                            "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                ") lacks A_J for 2J=" + std::to_string(tj));
            a = it->second;
        }
        if (!(a > 0.0))
            throw Error(Errc::NonPositiveCoefficient,
                        "A_J must be positive on edge (" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + ")");
        resolved[tj] = a;
    }
    if (user && user->size() != resolved.size())
        throw Error(Errc::JOutOfRange,
                    "coefficient outside the J range of edge (" + std::to_string(e.a) + "," +
                        std::to_string(e.b) + ")");
    return resolved;
}

Eigen::MatrixXcd projector_pair(TwiceSpin ts_k, TwiceSpin ts_l, TwiceSpin twice_j,
                                const NumericPolicy& policy) {
    const TwiceSpin tj_lo = std::abs(ts_k - ts_l);
    const TwiceSpin tj_hi = ts_k + ts_l;
    if (twice_j < tj_lo || twice_j > tj_hi || ((twice_j - tj_lo) % 2) != 0)
        throw Error(Errc::JOutOfRange, "J outside [|S_k-S_l|, S_k+S_l]");

    const Eigen::MatrixXcd c = casimir_pair(ts_k, ts_l);
    const Eigen::Index dim = c.rows();
    const double jj = 0.25 * twice_j * (twice_j + 2);  // J(J+1) with J = twice_j/2

    Eigen::MatrixXcd pi = Eigen::MatrixXcd::Identity(dim, dim);
    for (TwiceSpin tj = tj_lo; tj <= tj_hi; tj += 2) {
        if (tj == twice_j) continue;
        const double cc = 0.25 * tj * (tj + 2);
        pi = (c - cc * Eigen::MatrixXcd::Identity(dim, dim)) * pi / (jj - cc);
    }

    const double drift = (pi * pi - pi).cwiseAbs().maxCoeff();
    if (drift > policy.projector_drift)
        throw Error(Errc::NumericalInstability,
                    "projector idempotency drift " + std::to_string(drift) +
                        " exceeds tolerance; use a Clebsch-Gordan construction for these spins");
    return pi;
}

SparseOp projector_pi(VertexId k, VertexId l, TwiceSpin twice_j, const BasisIndexer& ix,
                      const NumericPolicy& policy) {
    const int pk = ix.position_of(k);
    const int pl = ix.position_of(l);
    if (pk < 0 || pl < 0 || k == l)
        throw Error(Errc::DimensionMismatch, "projector vertices not in indexer");
    return embed_pair(projector_pair(ix.twice_spin(pk), ix.twice_spin(pl), twice_j, policy),
                      k, l, ix);
}

Eigen::MatrixXcd edge_hamiltonian_pair(TwiceSpin ts_k, TwiceSpin ts_l, int multiplicity,
                                       const std::map<TwiceSpin, double>& a_j,
                                       const NumericPolicy& policy) {
    const TwiceSpin tj_max = ts_k + ts_l;
    const TwiceSpin tj_min = tj_max - 2 * multiplicity + 2;
    const Eigen::Index dim = static_cast<Eigen::Index>(ts_k + 1) * (ts_l + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (TwiceSpin tj = tj_min; tj <= tj_max; tj += 2) {
        auto it = a_j.find(tj);
        if (it == a_j.end())
            throw Error(Errc::MissingCoefficient, "A_J missing for 2J=" + std::to_string(tj));
        if (!(it->second > 0.0))
            throw Error(Errc::NonPositiveCoefficient, "A_J must be positive");
        h += it->second * projector_pair(ts_k, ts_l, tj, policy);
    }
    return h;
}

SparseOp edge_hamiltonian(const Edge& e, const MultiGraph& g, const SpinAssignment& s,
                          const EdgeCoefficients& coeffs, const BasisIndexer& ix,
                          const NumericPolicy& policy) {
    const TwiceSpin ts_k = s.at(g, e.a);
    const TwiceSpin ts_l = s.at(g, e.b);
    const auto a_j = resolve_edge_coefficients(e, ts_k, ts_l, coeffs);
    return embed_pair(edge_hamiltonian_pair(ts_k, ts_l, e.multiplicity, a_j, policy), e.a, e.b,
                      ix);
}

SparseOp full_hamiltonian(const MultiGraph& g, const SpinAssignment& s,
                          const EdgeCoefficients& coeffs, const BasisIndexer& ix,
                          const NumericPolicy& policy) {
    const UniquenessCheck uc = check_uniqueness(g, s);
    if (!uc.unique)
        throw Error(Errc::UniquenessViolated,
                    "spin assignment violates 2S = I*M; the uniqueness theorem does not apply");
    for (VertexId v : g.vertices)
        if (g.degree(v) == 0)
            throw Error(Errc::DimensionMismatch,
                        "vertex " + std::to_string(v) + " has no incident edge, so no spin");

    SparseOp h(static_cast<Eigen::Index>(ix.dim()), static_cast<Eigen::Index>(ix.dim()));
    for (const Edge& e : g.edges) h += edge_hamiltonian(e, g, s, coeffs, ix, policy);
    return h;
}

BlockHamiltonian block_hamiltonian(const MultiGraph& g, const Cut& cut,
                                   const SpinAssignment& s, const EdgeCoefficients& coeffs,
                                   const NumericPolicy& policy) {
    BlockHamiltonian out;
    out.indexer = BasisIndexer::for_subset(g, s, cut.block, policy);
    out.single_vertex = cut.block.size() == 1;
    out.op = SparseOp(static_cast<Eigen::Index>(out.indexer.dim()),
                      static_cast<Eigen::Index>(out.indexer.dim()));
    for (const Edge& e : g.edges) {
        if (!cut.in_block(e.a) || !cut.in_block(e.b)) continue;
        out.edges.push_back(e);
        out.op += edge_hamiltonian(e, g, s, coeffs, out.indexer, policy);
    }
    return out;
}

}  // namespace vbs
