#include "vbs/coherent.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vbs {

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(counter));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Eigen::VectorXcd coherent_state(TwiceSpin twice_spin, double theta, double phi) {
    if (twice_spin < 1) throw Error(Errc::DimensionMismatch, "twice_spin must be >= 1");
    const cplx u = std::cos(0.5 * theta) * std::exp(cplx(0, 0.5 * phi));
    const cplx v = std::sin(0.5 * theta) * std::exp(cplx(0, -0.5 * phi));

    // <S,m|Omega> = sqrt(C(2S, S+m)) u^{S+m} v^{S-m}; digit d has m = S - d
    Eigen::VectorXcd psi(twice_spin + 1);
    for (int d = 0; d <= twice_spin; ++d) {
        const int up = twice_spin - d;  // S + m
        psi(d) = std::sqrt(binomial(twice_spin, up)) * std::pow(u, up) * std::pow(v, d);
    }
    return psi;
}

double identity_resolution_mc(TwiceSpin twice_spin, std::size_t n_samples,
                              std::uint64_t seed) {
    if (n_samples < 1) throw Error(Errc::InsufficientSamples, "need at least one sample");
    const int dim = twice_spin + 1;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double c = 1.0 - 2.0 * counter_uniform(seed, 2 * i);
        const double phi = 2.0 * std::numbers::pi * counter_uniform(seed, 2 * i + 1);
        const Eigen::VectorXcd omega = coherent_state(twice_spin, std::acos(c), phi);
        acc += omega * omega.adjoint();
    }
    acc *= static_cast<double>(dim) / static_cast<double>(n_samples);
    return (acc - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev-based initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes(i) = x;
        weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

double identity_resolution_quadrature(TwiceSpin twice_spin) {
    const int dim = twice_spin + 1;
    const int n_theta = twice_spin + 2;
    const int n_phi = std::max(2 * twice_spin + 2, 4);

    Eigen::VectorXd nodes, weights;
    gauss_legendre(n_theta, nodes, weights);

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::acos(nodes(i));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            const Eigen::VectorXcd omega = coherent_state(twice_spin, theta, phi);
            acc += (weights(i) / n_phi) * (omega * omega.adjoint());
        }
    }
    acc *= 0.5 * dim;
    return (acc - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

PartitionEstimate mc_partition(const MultiGraph& g, const SpinAssignment& s,
                               std::size_t n_samples, std::uint64_t seed, int threads) {
    if (n_samples < 2)
        throw Error(Errc::InsufficientSamples, "partition estimate needs >= 2 samples");
    const UniquenessCheck uc = check_uniqueness(g, s);
    if (!uc.unique)
        throw Error(Errc::UniquenessViolated, "partition function assumes 2S = I*M");

    const std::size_t nv = g.vertex_count();
    double prefactor = 1.0;  // (2S_l+1)!/4pi per vertex times the 4pi sampling volume
    for (TwiceSpin ts : s.twice_spin) prefactor *= factorial(ts + 1);

    std::vector<std::pair<int, int>> edge_pos;
    edge_pos.reserve(g.edge_count());
    for (const Edge& e : g.edges)
        edge_pos.emplace_back(g.vertex_index(e.a), g.vertex_index(e.b));

    // Fixed-size blocks keep the summation order independent of thread count.
    const std::size_t block = 8192;
    const std::size_t n_blocks = (n_samples + block - 1) / block;
    std::vector<double> sums(n_blocks, 0.0), sums2(n_blocks, 0.0);

#ifdef _OPENMP
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (long long bi = 0; bi < static_cast<long long>(n_blocks); ++bi) {
        const std::size_t begin = static_cast<std::size_t>(bi) * block;
        const std::size_t end = std::min(begin + block, n_samples);
        double bsum = 0.0, bsum2 = 0.0;
        std::vector<double> ox(nv), oy(nv), oz(nv);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t v = 0; v < nv; ++v) {
                const std::uint64_t base = 2 * (i * nv + v);
                const double c = 1.0 - 2.0 * counter_uniform(seed, base);
                const double phi = 2.0 * std::numbers::pi * counter_uniform(seed, base + 1);
                const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
                ox[v] = st * std::cos(phi);
                oy[v] = st * std::sin(phi);
                oz[v] = c;
            }
            double w = prefactor;
            for (std::size_t e = 0; e < edge_pos.size(); ++e) {
                const auto [ka, kb] = edge_pos[e];
                const double dot = ox[ka] * ox[kb] + oy[ka] * oy[kb] + oz[ka] * oz[kb];
                const double base = 0.5 * (1.0 - dot);
                double p = 1.0;
                for (int m = 0; m < g.edges[e].multiplicity; ++m) p *= base;
                w *= p;
            }
            bsum += w;
            bsum2 += w * w;
        }
        sums[static_cast<std::size_t>(bi)] = bsum;
        sums2[static_cast<std::size_t>(bi)] = bsum2;
    }
#ifndef _OPENMP
    (void)threads;
#endif

    double total = 0.0, total2 = 0.0;
    for (std::size_t bi = 0; bi < n_blocks; ++bi) {
        total += sums[bi];
        total2 += sums2[bi];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = total / n;
    const double var = std::max(0.0, (total2 - n * mean * mean) / (n - 1.0));

    PartitionEstimate out;
    out.mean = mean;
    out.standard_error = std::sqrt(var / n);
    out.sample_count = n_samples;
    out.seed = seed;
    return out;
}

}  // namespace vbs
