#pragma once

#include <vector>

#include "vbs/hamiltonian.hpp"
#include "vbs/operators.hpp"
#include "vbs/vbs_state.hpp"

namespace vbs {

// rho_b of the (normalized) VBS state over the block of a cut.
ReducedDensity density_matrix(const StateVector& vbs, const Cut& cut);

struct DensitySpectrum {
    Eigen::VectorXd eigenvalues;   // descending
    Eigen::MatrixXcd eigenvectors; // columns aligned with eigenvalues
    double zero_threshold = 0.0;
    int support_dim = 0;           // D: eigenvalues above threshold
};

DensitySpectrum spectrum(const Eigen::MatrixXcd& rho, const NumericPolicy& policy = {});

struct EntropyReport {
    double von_neumann = 0.0;                    // nats
    std::vector<std::pair<double, double>> renyi;  // (alpha, S_R(alpha))
    double saturation = 0.0;                     // ln(deg), the large-block value
};

EntropyReport entropies(const DensitySpectrum& spec, const std::vector<double>& alphas,
                        long degeneracy = 0);

// Katsura's formula: prod over boundary vertices of (sum of cut multiplicities + 1).
long degeneracy_formula(const Cut& cut);

struct NullSpace {
    int dimension = 0;
    Eigen::MatrixXcd basis;   // orthonormal columns
    double threshold = 0.0;   // eigenvalues <= threshold count as zero
    double operator_norm = 0.0;
};

// Zero-energy eigenspace of a PSD operator. Dense eigendecomposition up to
// dense_limit, Lanczos with full reorthogonalization above it.
NullSpace nullity(const SparseOp& h, const NumericPolicy& policy = {},
                  Eigen::Index dense_limit = 4096);

// rho_infty = P_deg / deg, the large-block limit of the density matrix.
Eigen::MatrixXcd limit_density(const NullSpace& ground_space);

struct TheoremReport {
    double max_edge_residual = 0.0;   // max over internal edges of ||H(k,l) rho_b||_max
    double hb_rho_residual = 0.0;     // ||H_b rho_b||_max
    std::vector<double> eigvec_residuals;  // ||H_b |lambda>|| per support eigenvector
    double max_eigvec_residual = 0.0;
    int support_dim = 0;      // D
    long degeneracy = 0;      // Katsura formula
    int null_dim = 0;         // numerical nullity of H_b
    std::size_t dim = 0;      // block Hilbert space dimension
    double tolerance = 0.0;   // absolute residual tolerance used
    bool support_annihilated = false;  // residual checks (a)-(c)
    bool support_within_ground_space = false;  // D <= nullity
    bool degeneracy_matches = false;   // nullity == formula
    bool verdict = false;
};

// Checks, numerically, that the support of rho_b lies inside the ground space
// of the block Hamiltonian, and that the ground-space dimension matches the
// degeneracy formula.
TheoremReport verify_theorem(const MultiGraph& g, const Cut& cut, const SpinAssignment& s,
                             const EdgeCoefficients& coeffs, const StateVector& vbs,
                             const NumericPolicy& policy = {});

// ||P_a - P_b||_max for the projectors onto two column spans.
double projector_distance(const Eigen::MatrixXcd& basis_a, const Eigen::MatrixXcd& basis_b);

}  // namespace vbs
