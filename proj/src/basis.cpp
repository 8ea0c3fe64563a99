#include "vbs/basis.hpp"

#include <algorithm>

namespace vbs {

BasisIndexer::BasisIndexer(std::vector<VertexId> vertices, std::vector<TwiceSpin> twice_spins,
                           const NumericPolicy& policy)
    : vertices_(std::move(vertices)), twice_spins_(std::move(twice_spins)) {
    if (vertices_.size() != twice_spins_.size())
        throw Error(Errc::DimensionMismatch, "vertex/spin count mismatch");
    if (!std::is_sorted(vertices_.begin(), vertices_.end()))
        throw Error(Errc::DimensionMismatch, "indexer vertices must be ascending");
    for (TwiceSpin ts : twice_spins_)
        if (ts < 0) throw Error(Errc::DimensionMismatch, "negative spin");

    strides_.resize(vertices_.size());
    dim_ = 1;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        strides_[i] = dim_;
        std::size_t d = static_cast<std::size_t>(twice_spins_[i]) + 1;
        if (dim_ > (policy.force ? SIZE_MAX / d : policy.dim_guard / d))
            throw Error(Errc::DimensionGuard,
                        "Hilbert dimension exceeds guard (" + std::to_string(policy.dim_guard) +
                            "); rerun with --force to override");
        dim_ *= d;
    }
}

BasisIndexer BasisIndexer::for_graph(const MultiGraph& g, const SpinAssignment& s,
                                     const NumericPolicy& policy) {
    return BasisIndexer(g.vertices, s.twice_spin, policy);
}

BasisIndexer BasisIndexer::for_subset(const MultiGraph& g, const SpinAssignment& s,
                                      const std::vector<VertexId>& verts,
                                      const NumericPolicy& policy) {
    std::vector<VertexId> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    std::vector<TwiceSpin> spins;
    spins.reserve(sorted.size());
    for (VertexId v : sorted) spins.push_back(s.at(g, v));
    return BasisIndexer(std::move(sorted), std::move(spins), policy);
}

int BasisIndexer::position_of(VertexId v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return -1;
    return static_cast<int>(it - vertices_.begin());
}

std::size_t BasisIndexer::index_of(std::span<const int> digits) const {
    if (digits.size() != vertices_.size())
        throw Error(Errc::DimensionMismatch, "digit count mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] > twice_spins_[i])
            throw Error(Errc::DimensionMismatch, "digit out of range");
        idx += static_cast<std::size_t>(digits[i]) * strides_[i];
    }
    return idx;
}

void BasisIndexer::digits_of(std::size_t index, std::span<int> out) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        std::size_t d = static_cast<std::size_t>(twice_spins_[i]) + 1;
        out[i] = static_cast<int>(index % d);
        index /= d;
    }
}

int BasisIndexer::total_twice_m(std::size_t index) const {
    int total = 0;
    for (int p = 0; p < site_count(); ++p) total += twice_m(index, p);
    return total;
}

StateVector zero_state(const BasisIndexer& indexer) {
    StateVector psi;
    psi.indexer = indexer;
    psi.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(indexer.dim()));
    return psi;
}

void fix_phase(StateVector& psi) {
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
        cplx a = psi.amplitudes(i);
        if (std::abs(a) > 0.0) {
            psi.amplitudes *= std::conj(a) / std::abs(a);
            return;
        }
    }
}

double normalized_overlap(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw Error(Errc::DimensionMismatch, "overlap of states with different dimensions");
    double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw Error(Errc::NormZero, "overlap with zero state");
    return std::abs(a.amplitudes.dot(b.amplitudes)) / (na * nb);
}

}  // namespace vbs
