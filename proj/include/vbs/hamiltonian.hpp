#pragma once

#include <map>
#include <string>
#include <vector>

#include "vbs/operators.hpp"

namespace vbs {

// Per-edge weights A_J > 0 of the projector expansion. An edge with no entry
// uses A_J = 1 for its whole J range; an edge with entries must cover the
// range exactly.
struct EdgeCoefficients {
    std::map<std::pair<VertexId, VertexId>, std::map<TwiceSpin, double>> table;

    bool empty() const { return table.empty(); }
    void set(VertexId k, VertexId l, TwiceSpin twice_j, double value);
    const std::map<TwiceSpin, double>* find(VertexId k, VertexId l) const;
};

// Coefficient file format: lines `A <k> <l> <2J> <value>`, `#` comments.
EdgeCoefficients parse_coefficients(const std::string& text);

// Resolved weights for one edge: exactly J in (S_k+S_l-M, S_k+S_l], doubled keys.
std::map<TwiceSpin, double> resolve_edge_coefficients(const Edge& e, TwiceSpin ts_k,
                                                      TwiceSpin ts_l,
                                                      const EdgeCoefficients& coeffs);

// Projector onto total edge spin J, built as the polynomial in (S_k+S_l)^2.
Eigen::MatrixXcd projector_pair(TwiceSpin ts_k, TwiceSpin ts_l, TwiceSpin twice_j,
                                const NumericPolicy& policy = {});

SparseOp projector_pi(VertexId k, VertexId l, TwiceSpin twice_j, const BasisIndexer& ix,
                      const NumericPolicy& policy = {});

// H(k,l) = sum_J A_J pi_J on the pair space.
Eigen::MatrixXcd edge_hamiltonian_pair(TwiceSpin ts_k, TwiceSpin ts_l, int multiplicity,
                                       const std::map<TwiceSpin, double>& a_j,
                                       const NumericPolicy& policy = {});

SparseOp edge_hamiltonian(const Edge& e, const MultiGraph& g, const SpinAssignment& s,
                          const EdgeCoefficients& coeffs, const BasisIndexer& ix,
                          const NumericPolicy& policy = {});

// Full AKLT Hamiltonian; refuses spin assignments violating the uniqueness
// condition (the construction below assumes it).
SparseOp full_hamiltonian(const MultiGraph& g, const SpinAssignment& s,
                          const EdgeCoefficients& coeffs, const BasisIndexer& ix,
                          const NumericPolicy& policy = {});

struct BlockHamiltonian {
    SparseOp op;                  // on the block's Hilbert space
    BasisIndexer indexer;
    std::vector<Edge> edges;      // edges fully inside the block
    bool single_vertex = false;   // N_b == 1: H_b is identically zero
};

BlockHamiltonian block_hamiltonian(const MultiGraph& g, const Cut& cut,
                                   const SpinAssignment& s, const EdgeCoefficients& coeffs,
                                   const NumericPolicy& policy = {});

}  // namespace vbs
