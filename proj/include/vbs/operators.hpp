#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "vbs/basis.hpp"
#include "vbs/graph.hpp"
#include "vbs/types.hpp"

namespace vbs {

using SparseOp = Eigen::SparseMatrix<cplx>;

// Standard ladder representation on the (2S+1)-dimensional site space,
// rows/columns in canonical digit order (m = S - d).
struct SpinMatrices {
    Eigen::MatrixXcd sx, sy, sz, sp, sm;
};

SpinMatrices local_spin_matrices(TwiceSpin twice_spin);

// Identity on every other tensor factor.
SparseOp embed(const Eigen::MatrixXcd& site_op, VertexId v, const BasisIndexer& ix);

// Two-site operator given on the pair space with index (d_k + dim_k * d_l),
// embedded with identity elsewhere. k and l need not be adjacent in the
// indexer's site order.
SparseOp embed_pair(const Eigen::MatrixXcd& pair_op, VertexId k, VertexId l,
                    const BasisIndexer& ix);

// (S_k + S_l)^2 on the pair space; eigenvalues J(J+1), |S_k-S_l| <= J <= S_k+S_l.
Eigen::MatrixXcd casimir_pair(TwiceSpin ts_k, TwiceSpin ts_l);

SparseOp edge_casimir(VertexId k, VertexId l, const BasisIndexer& ix);

// Total S^z and total S^+ over all sites (SU(2) invariance checks).
SparseOp total_sz(const BasisIndexer& ix);
SparseOp total_sp(const BasisIndexer& ix);

double hermiticity_error(const SparseOp& op);
double max_abs(const SparseOp& op);

struct ReducedDensity {
    Eigen::MatrixXcd rho;   // unit trace, Hermitian PSD
    BasisIndexer indexer;   // basis of the kept sites
};

// rho over `keep` from a pure state on the full space; normalizes internally.
ReducedDensity partial_trace(const StateVector& psi, const std::vector<VertexId>& keep);

}  // namespace vbs
