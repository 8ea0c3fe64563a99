#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "vbs/graph.hpp"
#include "vbs/types.hpp"

namespace vbs {

// Spin-S coherent state |Omega> for the unit vector with polar angles
// (theta, phi); spinor phases follow the half-angle convention
// u = cos(theta/2) e^{i phi/2}, v = sin(theta/2) e^{-i phi/2}.
Eigen::VectorXcd coherent_state(TwiceSpin twice_spin, double theta, double phi);

// Monte Carlo check of (2S+1)/4pi * integral |Omega><Omega| = I.
// Returns the max entrywise deviation; O(1/sqrt(N)).
double identity_resolution_mc(TwiceSpin twice_spin, std::size_t n_samples,
                              std::uint64_t seed);

// Deterministic version: Gauss-Legendre in cos(theta) times a uniform phi
// grid, exact for the polynomial integrand; deviation at rounding level.
double identity_resolution_quadrature(TwiceSpin twice_spin);

struct PartitionEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
};

// Estimates Phi = Tr|VBS><VBS| by uniform sphere sampling of the classical
// weight prod_l (2S_l+1)! * prod_edges [ (1 - Omega_k.Omega_l)/2 ]^{M_kl}.
// Bit-identical for fixed (seed, n_samples) regardless of thread count.
PartitionEstimate mc_partition(const MultiGraph& g, const SpinAssignment& s,
                               std::size_t n_samples, std::uint64_t seed, int threads = 0);

// Counter-based uniform stream in [0,1): a pure function of (seed, counter),
// so samples can be drawn in parallel without shared state.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

}  // namespace vbs
