#include "vbs/operators.hpp"

#include <cmath>
#include <vector>

namespace vbs {

SpinMatrices local_spin_matrices(TwiceSpin twice_spin) {
    if (twice_spin < 1) throw Error(Errc::DimensionMismatch, "twice_spin must be >= 1");
    const int dim = twice_spin + 1;
    const double s = 0.5 * twice_spin;

    SpinMatrices out;
    out.sz = Eigen::MatrixXcd::Zero(dim, dim);
    out.sp = Eigen::MatrixXcd::Zero(dim, dim);
    for (int d = 0; d < dim; ++d) {
        double m = s - d;
        out.sz(d, d) = m;
        // S+ |S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>, i.e. digit d -> d-1
        if (d > 0) out.sp(d - 1, d) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
    out.sm = out.sp.adjoint();
    out.sx = 0.5 * (out.sp + out.sm);
    out.sy = cplx(0, -0.5) * (out.sp - out.sm);
    return out;
}

SparseOp embed(const Eigen::MatrixXcd& site_op, VertexId v, const BasisIndexer& ix) {
    const int pos = ix.position_of(v);
    if (pos < 0) throw Error(Errc::DimensionMismatch, "vertex not in indexer");
    const int ld = ix.local_dim(pos);
    if (site_op.rows() != ld || site_op.cols() != ld)
        throw Error(Errc::DimensionMismatch, "site operator dimension mismatch");

    const std::size_t dim = ix.dim();
    const std::ptrdiff_t stride = static_cast<std::ptrdiff_t>(ix.stride(pos));
    std::vector<Eigen::Triplet<cplx>> trips;
    for (std::size_t col = 0; col < dim; ++col) {
        const int c = ix.digit(col, pos);
        for (int r = 0; r < ld; ++r) {
            const cplx val = site_op(r, c);
            if (val == cplx(0, 0)) continue;
            const std::size_t row = static_cast<std::size_t>(
                static_cast<std::ptrdiff_t>(col) + (r - c) * stride);
            trips.emplace_back(static_cast<int>(row), static_cast<int>(col), val);
        }
    }
    SparseOp op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    op.setFromTriplets(trips.begin(), trips.end());
    return op;
}

SparseOp embed_pair(const Eigen::MatrixXcd& pair_op, VertexId k, VertexId l,
                    const BasisIndexer& ix) {
    const int pk = ix.position_of(k);
    const int pl = ix.position_of(l);
    if (pk < 0 || pl < 0 || k == l)
        throw Error(Errc::DimensionMismatch, "pair vertices not in indexer");
    const int dk = ix.local_dim(pk);
    const int dl = ix.local_dim(pl);
    if (pair_op.rows() != dk * dl || pair_op.cols() != dk * dl)
        throw Error(Errc::DimensionMismatch, "pair operator dimension mismatch");

    const std::size_t dim = ix.dim();
    const std::ptrdiff_t sk = static_cast<std::ptrdiff_t>(ix.stride(pk));
    const std::ptrdiff_t sl = static_cast<std::ptrdiff_t>(ix.stride(pl));
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(dim * 4);
    for (std::size_t col = 0; col < dim; ++col) {
        const int ck = ix.digit(col, pk);
        const int cl = ix.digit(col, pl);
        const int pc = ck + dk * cl;
        for (int pr = 0; pr < dk * dl; ++pr) {
            const cplx val = pair_op(pr, pc);
            if (val == cplx(0, 0)) continue;
            const int rk = pr % dk;
            const int rl = pr / dk;
            const std::size_t row = static_cast<std::size_t>(
                static_cast<std::ptrdiff_t>(col) + (rk - ck) * sk + (rl - cl) * sl);
            trips.emplace_back(static_cast<int>(row), static_cast<int>(col), val);
        }
    }
    SparseOp op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    op.setFromTriplets(trips.begin(), trips.end());
    return op;
}

namespace {

// A acting on site k, B on site l, pair index d_k + dim_k * d_l.
Eigen::MatrixXcd pair_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const int dk = static_cast<int>(a.rows());
    const int dl = static_cast<int>(b.rows());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk * dl, dk * dl);
    for (int cl = 0; cl < dl; ++cl)
        for (int ck = 0; ck < dk; ++ck)
            for (int rl = 0; rl < dl; ++rl)
                for (int rk = 0; rk < dk; ++rk)
                    out(rk + dk * rl, ck + dk * cl) = a(rk, ck) * b(rl, cl);
    return out;
}

}  // namespace

Eigen::MatrixXcd casimir_pair(TwiceSpin ts_k, TwiceSpin ts_l) {
    const SpinMatrices k = local_spin_matrices(ts_k);
    const SpinMatrices l = local_spin_matrices(ts_l);
    const double sk = 0.5 * ts_k, sl = 0.5 * ts_l;
    const int dk = ts_k + 1, dl = ts_l + 1;

    // (S_k + S_l)^2 = 2 S_k.S_l + S_k(S_k+1) + S_l(S_l+1)
    Eigen::MatrixXcd c = pair_product(k.sz, l.sz) * 2.0 + pair_product(k.sp, l.sm) +
                         pair_product(k.sm, l.sp);
    c += (sk * (sk + 1) + sl * (sl + 1)) * Eigen::MatrixXcd::Identity(dk * dl, dk * dl);
    return c;
}

SparseOp edge_casimir(VertexId k, VertexId l, const BasisIndexer& ix) {
    const int pk = ix.position_of(k);
    const int pl = ix.position_of(l);
    if (pk < 0 || pl < 0 || k == l)
        throw Error(Errc::DimensionMismatch, "edge vertices not in indexer");
    return embed_pair(casimir_pair(ix.twice_spin(pk), ix.twice_spin(pl)), k, l, ix);
}

SparseOp total_sz(const BasisIndexer& ix) {
    const std::size_t dim = ix.dim();
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        trips.emplace_back(static_cast<int>(i), static_cast<int>(i),
                           cplx(0.5 * ix.total_twice_m(i), 0));
    SparseOp op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    op.setFromTriplets(trips.begin(), trips.end());
    return op;
}

SparseOp total_sp(const BasisIndexer& ix) {
    SparseOp op(static_cast<Eigen::Index>(ix.dim()), static_cast<Eigen::Index>(ix.dim()));
    for (int p = 0; p < ix.site_count(); ++p)
        op += embed(local_spin_matrices(ix.twice_spin(p)).sp, ix.vertex(p), ix);
    return op;
}

double hermiticity_error(const SparseOp& op) {
    SparseOp diff = op - SparseOp(op.adjoint());
    double m = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseOp::InnerIterator it(diff, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

double max_abs(const SparseOp& op) {
    double m = 0.0;
    for (int k = 0; k < op.outerSize(); ++k)
        for (SparseOp::InnerIterator it(op, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

ReducedDensity partial_trace(const StateVector& psi, const std::vector<VertexId>& keep) {
    const BasisIndexer& full = psi.indexer;
    const double nrm2 = psi.squared_norm();
    if (nrm2 <= 0.0) throw Error(Errc::NormZero, "partial trace of the zero state");

    std::vector<VertexId> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    std::vector<VertexId> rest;
    std::vector<TwiceSpin> keep_spins, rest_spins;
    for (int p = 0; p < full.site_count(); ++p) {
        if (std::binary_search(keep_sorted.begin(), keep_sorted.end(), full.vertex(p)))
            keep_spins.push_back(full.twice_spin(p));
        else {
            rest.push_back(full.vertex(p));
            rest_spins.push_back(full.twice_spin(p));
        }
    }
    if (keep_spins.size() != keep_sorted.size())
        throw Error(Errc::DimensionMismatch, "kept vertex not in state indexer");
    if (rest.empty()) throw Error(Errc::BlockIsWholeGraph, "nothing to trace out");

    NumericPolicy unguarded;
    unguarded.force = true;  // sub-dimensions never exceed the already-guarded full space
    BasisIndexer keep_ix(keep_sorted, keep_spins, unguarded);
    BasisIndexer rest_ix(rest, rest_spins, unguarded);

    // amplitude matrix Psi(b, e): full index decomposed into kept/rest digits
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(keep_ix.dim()),
                                                static_cast<Eigen::Index>(rest_ix.dim()));
    const int sites = full.site_count();
    for (std::size_t idx = 0; idx < full.dim(); ++idx) {
        std::size_t bi = 0, ei = 0;
        int bp = 0, ep = 0;
        for (int p = 0; p < sites; ++p) {
            const int d = full.digit(idx, p);
            if (std::binary_search(keep_sorted.begin(), keep_sorted.end(), full.vertex(p)))
                bi += static_cast<std::size_t>(d) * keep_ix.stride(bp++);
            else
                ei += static_cast<std::size_t>(d) * rest_ix.stride(ep++);
        }
        m(static_cast<Eigen::Index>(bi), static_cast<Eigen::Index>(ei)) =
            psi.amplitudes(static_cast<Eigen::Index>(idx));
    }

    ReducedDensity out;
    out.rho = (m * m.adjoint()) / nrm2;
    out.indexer = std::move(keep_ix);
    return out;
}

}  // namespace vbs
