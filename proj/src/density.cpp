#include "vbs/density.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace vbs {

ReducedDensity density_matrix(const StateVector& vbs, const Cut& cut) {
    return partial_trace(vbs, cut.block);
}

DensitySpectrum spectrum(const Eigen::MatrixXcd& rho, const NumericPolicy& policy) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    if (solver.info() != Eigen::Success)
        throw Error(Errc::NumericalInstability, "eigendecomposition failed");

    const Eigen::Index n = rho.rows();
    DensitySpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {  // ascending -> descending
        out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    const double lambda_max = n > 0 ? std::max(out.eigenvalues(0), 0.0) : 0.0;
    out.zero_threshold = policy.zero_threshold(static_cast<std::size_t>(n), lambda_max);
    out.support_dim = static_cast<int>(
        (out.eigenvalues.array() > out.zero_threshold).count());
    return out;
}

EntropyReport entropies(const DensitySpectrum& spec, const std::vector<double>& alphas,
                        long degeneracy) {
    EntropyReport out;
    double s_vn = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        const double l = spec.eigenvalues(i);
        if (l > spec.zero_threshold) s_vn -= l * std::log(l);
    }
    out.von_neumann = s_vn;

    for (double alpha : alphas) {
        if (!(alpha > 0.0))
            throw Error(Errc::NonPositiveAlpha, "Renyi index must be positive");
        double value;
        if (std::abs(alpha - 1.0) < 1e-12) {
            value = s_vn;
        } else {
            double sum = 0.0;
            for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
                const double l = spec.eigenvalues(i);
                if (l > spec.zero_threshold) sum += std::pow(l, alpha);
            }
            value = std::log(sum) / (1.0 - alpha);
        }
        out.renyi.emplace_back(alpha, value);
    }
    out.saturation = degeneracy > 0 ? std::log(static_cast<double>(degeneracy))
                                    : std::numeric_limits<double>::quiet_NaN();
    return out;
}

long degeneracy_formula(const Cut& cut) {
    long deg = 1;
    for (VertexId v : cut.boundary_block) deg *= cut.cut_multiplicity(v) + 1;
    return deg;
}

namespace {

NullSpace nullspace_dense(const SparseOp& h, const NumericPolicy& policy) {
    Eigen::MatrixXcd dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw Error(Errc::NumericalInstability, "eigendecomposition failed");

    NullSpace out;
    out.operator_norm = std::max(std::abs(solver.eigenvalues()(0)),
                                 std::abs(solver.eigenvalues()(dense.rows() - 1)));
    out.threshold = policy.null_rel * std::max(out.operator_norm, 1.0);
    const auto count =
        (solver.eigenvalues().array() <= out.threshold).count();
    out.dimension = static_cast<int>(count);
    out.basis = solver.eigenvectors().leftCols(count);
    return out;
}

// Deflated Lanczos for the zero modes of a PSD operator. A single Krylov
// sequence cannot separate a degenerate eigenvalue, so null vectors are
// captured one per restart and projected out of the next run.
NullSpace nullspace_lanczos(const SparseOp& h, const NumericPolicy& policy) {
    const Eigen::Index n = h.rows();
    NullSpace out;

    // spectral norm estimate via power iteration
    Eigen::VectorXcd p = Eigen::VectorXcd::Ones(n).normalized();
    double norm_est = 0.0;
    for (int it = 0; it < 30; ++it) {
        p = (h * p).eval();
        const double nn = p.norm();
        if (nn == 0.0) break;
        norm_est = nn;
        p /= nn;
    }
    out.operator_norm = norm_est;
    out.threshold = policy.null_rel * std::max(norm_est, 1.0);

    std::vector<Eigen::VectorXcd> null_vecs;
    int restart = 0;
    Eigen::Index m = std::min<Eigen::Index>(n, 120);
    while (static_cast<Eigen::Index>(null_vecs.size()) < n) {
        // deterministic start, varied per restart, deflated against found modes
        Eigen::VectorXcd v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = cplx(std::cos(0.7 * static_cast<double>(i) + 0.3 + 1.7 * restart),
                        std::sin(0.3 * static_cast<double>(i) + 0.1 * restart));
        for (const auto& z : null_vecs) v -= z.dot(v) * z;
        v.normalize();

        std::vector<Eigen::VectorXcd> basis;
        basis.reserve(static_cast<std::size_t>(m));
        Eigen::VectorXd alpha(m), beta(m);
        Eigen::Index steps = 0;
        for (Eigen::Index j = 0; j < m; ++j) {
            basis.push_back(v);
            Eigen::VectorXcd w = h * v;
            alpha(j) = w.dot(v).real();
            for (int pass = 0; pass < 2; ++pass) {  // full reorthogonalization
                for (const auto& b : basis) w -= b.dot(w) * b;
                for (const auto& z : null_vecs) w -= z.dot(w) * z;
            }
            const double nb = w.norm();
            beta(j) = nb;
            ++steps;
            if (nb < 1e-13) break;  // invariant subspace exhausted
            v = w / nb;
        }

        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
        for (Eigen::Index j = 0; j < steps; ++j) {
            tri(j, j) = alpha(j);
            if (j + 1 < steps) tri(j, j + 1) = tri(j + 1, j) = beta(j);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolve(tri);

        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
        for (Eigen::Index j = 0; j < steps; ++j)
            y += tsolve.eigenvectors()(j, 0) * basis[static_cast<std::size_t>(j)];
        for (const auto& z : null_vecs) y -= z.dot(y) * z;
        y.normalize();
        const double theta = tsolve.eigenvalues()(0);
        const double residual = (h * y - theta * y).norm();

        const bool exhausted = steps < m || steps >= n;
        if (theta <= out.threshold && residual <= 100.0 * out.threshold) {
            null_vecs.push_back(std::move(y));
            ++restart;
            continue;
        }
        if (theta > out.threshold && (residual <= 0.5 * (theta - out.threshold) || exhausted))
            break;  // smallest remaining eigenvalue sits safely above zero
        if (m >= n)
            throw Error(Errc::NumericalInstability, "null space iteration failed to converge");
        m = std::min<Eigen::Index>(n, 2 * m);
    }

    out.dimension = static_cast<int>(null_vecs.size());
    out.basis.resize(n, out.dimension);
    for (int c = 0; c < out.dimension; ++c) out.basis.col(c) = null_vecs[static_cast<std::size_t>(c)];
    return out;
}

}  // namespace

NullSpace nullity(const SparseOp& h, const NumericPolicy& policy, Eigen::Index dense_limit) {
    if (h.rows() != h.cols()) throw Error(Errc::DimensionMismatch, "operator must be square");
    if (h.rows() <= dense_limit) return nullspace_dense(h, policy);
    return nullspace_lanczos(h, policy);
}

Eigen::MatrixXcd limit_density(const NullSpace& ground_space) {
    if (ground_space.dimension == 0)
        throw Error(Errc::NormZero, "empty ground space");
    return (ground_space.basis * ground_space.basis.adjoint()) /
           static_cast<double>(ground_space.dimension);
}

double projector_distance(const Eigen::MatrixXcd& basis_a, const Eigen::MatrixXcd& basis_b) {
    const Eigen::MatrixXcd pa = basis_a * basis_a.adjoint();
    const Eigen::MatrixXcd pb = basis_b * basis_b.adjoint();
    return (pa - pb).cwiseAbs().maxCoeff();
}

TheoremReport verify_theorem(const MultiGraph& g, const Cut& cut, const SpinAssignment& s,
                             const EdgeCoefficients& coeffs, const StateVector& vbs,
                             const NumericPolicy& policy) {
    if (cut.block.size() < 2)
        throw Error(Errc::BlockTooSmall, "theorem check needs N_b >= 2");

    const ReducedDensity rd = density_matrix(vbs, cut);
    const BlockHamiltonian hb = block_hamiltonian(g, cut, s, coeffs, policy);

    TheoremReport rep;
    rep.dim = rd.indexer.dim();
    rep.degeneracy = degeneracy_formula(cut);

    // (a) every internal edge term annihilates rho_b
    for (const Edge& e : hb.edges) {
        const SparseOp he = edge_hamiltonian(e, g, s, coeffs, hb.indexer, policy);
        const double r = (he * rd.rho).cwiseAbs().maxCoeff();
        rep.max_edge_residual = std::max(rep.max_edge_residual, r);
    }

    // (b) the block Hamiltonian annihilates rho_b
    rep.hb_rho_residual = (hb.op * rd.rho).cwiseAbs().maxCoeff();

    // (c) support eigenvectors are zero-energy states of H_b
    const DensitySpectrum spec = spectrum(rd.rho, policy);
    rep.support_dim = spec.support_dim;
    const NullSpace ns = nullity(hb.op, policy);
    rep.null_dim = ns.dimension;
    rep.tolerance = policy.theorem_tol * std::max(ns.operator_norm, 1.0);
    for (int i = 0; i < spec.support_dim; ++i) {
        const double r = (hb.op * spec.eigenvectors.col(i)).norm();
        rep.eigvec_residuals.push_back(r);
        rep.max_eigvec_residual = std::max(rep.max_eigvec_residual, r);
    }

    rep.support_annihilated = rep.max_edge_residual <= rep.tolerance &&
                              rep.hb_rho_residual <= rep.tolerance &&
                              rep.max_eigvec_residual <= rep.tolerance;
    rep.support_within_ground_space = rep.support_dim <= rep.null_dim;
    rep.degeneracy_matches = rep.null_dim == rep.degeneracy;
    rep.verdict = rep.support_annihilated && rep.support_within_ground_space &&
                  rep.degeneracy_matches;
    return rep;
}

}  // namespace vbs
