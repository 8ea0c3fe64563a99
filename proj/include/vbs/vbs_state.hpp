#pragma once

#include <map>
#include <vector>

#include "vbs/basis.hpp"
#include "vbs/graph.hpp"
#include "vbs/types.hpp"

namespace vbs {

// Expansion of a product of singlet-bond powers over Schwinger boson
// monomials. A term maps each vertex to boson occupations (n_a, n_b) with
// n_a + n_b fixed by the expanded edge set; the key stores n_a per vertex.
struct SchwingerExpansion {
    std::vector<VertexId> vertices;     // ascending
    std::vector<int> occupation_total;  // n_a + n_b at each vertex
    std::map<std::vector<int>, double> terms;  // n_a vector -> coefficient

    int vertex_pos(VertexId v) const;
};

// Expands prod_edges (a'_k b'_l - b'_k a'_l)^{M_kl} |vac> by multinomial
// expansion, depth-first over edges with occupation pruning.
SchwingerExpansion expand_singlet_product(const std::vector<VertexId>& vertices,
                                          const std::vector<Edge>& edges);

// Maps monomials to the spin-z basis: occupation (n_a, n_b) becomes
// |S, m = (n_a - n_b)/2> weighted by sqrt(n_a! n_b!). Requires the indexer's
// 2S at each site to equal the expansion's occupation total.
StateVector map_to_spin_basis(const SchwingerExpansion& ex, const BasisIndexer& ix);

// VBS ground state via the Schwinger boson representation. Unnormalized;
// global phase fixed so the first nonzero amplitude is real positive.
StateVector vbs_schwinger(const MultiGraph& g, const SpinAssignment& s,
                          const NumericPolicy& policy = {});

// VBS ground state via explicit singlets on virtual spin-1/2 pairs and
// per-vertex symmetrization; basic model (all M = 1) only. Independent of
// the Schwinger route.
StateVector vbs_symmetrized(const MultiGraph& g, const NumericPolicy& policy = {});

struct BlockVbs {
    SchwingerExpansion expansion;  // over internal edges only
    StateVector state;             // on the induced subgraph's own spins
    bool empty_product = false;    // no internal edge
};

// Block VBS state from edges fully inside the block. At boundary vertices the
// boson total falls short of 2S_l by the cut multiplicity.
BlockVbs block_vbs(const MultiGraph& g, const Cut& cut, const SpinAssignment& s,
                   const NumericPolicy& policy = {});

struct GroundSpaceBasis {
    BasisIndexer indexer;                          // block Hilbert space
    std::vector<StateVector> states;               // unit-normalized, count = Katsura degeneracy
    std::vector<std::vector<int>> boundary_powers; // a'-exponent per boundary vertex per state
    std::vector<VertexId> boundary_vertices;
};

// Ground space of the block Hamiltonian: boundary monomials of degree
// sum_cut M_kl multiplied into the block VBS state.
GroundSpaceBasis ground_space_basis(const MultiGraph& g, const Cut& cut,
                                    const SpinAssignment& s, const NumericPolicy& policy = {});

}  // namespace vbs
