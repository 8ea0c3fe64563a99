#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "vbs/graph.hpp"
#include "vbs/types.hpp"

namespace vbs {

// Mixed-radix index over the product spin-z basis.
//
// Canonical convention used everywhere in this project:
//   * sites ordered by ascending VertexId,
//   * local digit d at a spin-S site encodes m = S - d (d = 0 is m = +S),
//   * the global index is little-endian in site order (first site varies fastest).
class BasisIndexer {
public:
    BasisIndexer() = default;
    BasisIndexer(std::vector<VertexId> vertices, std::vector<TwiceSpin> twice_spins,
                 const NumericPolicy& policy = {});

    static BasisIndexer for_graph(const MultiGraph& g, const SpinAssignment& s,
                                  const NumericPolicy& policy = {});
    // Indexer over a vertex subset, spins taken from the full assignment.
    static BasisIndexer for_subset(const MultiGraph& g, const SpinAssignment& s,
                                   const std::vector<VertexId>& verts,
                                   const NumericPolicy& policy = {});

    std::size_t dim() const { return dim_; }
    int site_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    VertexId vertex(int pos) const { return vertices_[static_cast<std::size_t>(pos)]; }
    TwiceSpin twice_spin(int pos) const { return twice_spins_[static_cast<std::size_t>(pos)]; }
    int local_dim(int pos) const { return twice_spins_[static_cast<std::size_t>(pos)] + 1; }
    std::size_t stride(int pos) const { return strides_[static_cast<std::size_t>(pos)]; }
    int position_of(VertexId v) const;

    std::size_t index_of(std::span<const int> digits) const;
    void digits_of(std::size_t index, std::span<int> out) const;
    int digit(std::size_t index, int pos) const {
        return static_cast<int>(index / strides_[static_cast<std::size_t>(pos)]) %
               local_dim(pos);
    }
    // twice the magnetic quantum number at a site, 2m = 2S - 2d
    int twice_m(std::size_t index, int pos) const {
        return twice_spins_[static_cast<std::size_t>(pos)] - 2 * digit(index, pos);
    }
    // total 2m of a basis state
    int total_twice_m(std::size_t index) const;

    bool operator==(const BasisIndexer& other) const {
        return vertices_ == other.vertices_ && twice_spins_ == other.twice_spins_;
    }

private:
    std::vector<VertexId> vertices_;
    std::vector<TwiceSpin> twice_spins_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 1;
};

struct StateVector {
    BasisIndexer indexer;
    Eigen::VectorXcd amplitudes;

    std::size_t dim() const { return indexer.dim(); }
    double norm() const { return amplitudes.norm(); }
    double squared_norm() const { return amplitudes.squaredNorm(); }
};

StateVector zero_state(const BasisIndexer& indexer);

// Rotates the global phase so the first nonzero amplitude (canonical order)
// is real positive; no-op on the zero vector.
void fix_phase(StateVector& psi);

// |<a|b>| / (|a| |b|)
double normalized_overlap(const StateVector& a, const StateVector& b);

}  // namespace vbs
