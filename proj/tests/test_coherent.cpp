#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vbs/coherent.hpp"
#include "vbs/vbs_state.hpp"

using namespace vbs;

TEST_CASE("coherent state at the poles") {
    for (TwiceSpin ts : {1, 2, 5}) {
        Eigen::VectorXcd north = coherent_state(ts, 0.0, 0.0);
        CHECK(std::abs(north(0) - cplx(1, 0)) < 1e-14);  // |S, S>
        CHECK(north.tail(ts).norm() < 1e-14);

        Eigen::VectorXcd south = coherent_state(ts, std::numbers::pi, 0.3);
        CHECK(std::abs(std::abs(south(ts)) - 1.0) < 1e-14);  // |S, -S> up to phase
        CHECK(south.head(ts).norm() < 1e-14);
    }
}

TEST_CASE("equatorial spin-1/2 coherent state") {
    Eigen::VectorXcd psi = coherent_state(1, 0.5 * std::numbers::pi, 0.0);
    CHECK(std::abs(psi(0) - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-14);
    CHECK(std::abs(psi(1) - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-14);
}

TEST_CASE("coherent states are normalized for random angles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (TwiceSpin ts = 1; ts <= 10; ++ts) {
        for (int rep = 0; rep < 100; ++rep) {
            const double theta = std::acos(1.0 - 2.0 * u01(rng));
            const double phi = 2.0 * std::numbers::pi * u01(rng);
            CHECK(std::abs(coherent_state(ts, theta, phi).norm() - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("quadrature resolves the identity to rounding accuracy") {
    for (TwiceSpin ts = 1; ts <= 10; ++ts)
        CHECK(identity_resolution_quadrature(ts) < 1e-12);
}

TEST_CASE("Monte Carlo identity resolution converges statistically") {
    CHECK(identity_resolution_mc(1, 1000000, 12345) < 5e-3);  // ~3 sigma at this N
    CHECK(identity_resolution_mc(2, 100000, 999) < 3e-2);
}

TEST_CASE("counter stream is deterministic and in range") {
    for (std::uint64_t c = 0; c < 1000; ++c) {
        const double u = counter_uniform(42, c);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == counter_uniform(42, c));
    }
    CHECK(counter_uniform(42, 7) != counter_uniform(43, 7));
}

TEST_CASE("partition estimate on the single edge hits the exact value 2") {
    auto g = parse_graph("e 0 1 1\n").graph;
    auto s = infer_spins(g);
    auto est = mc_partition(g, s, 200000, 2024);
    CHECK(est.standard_error > 0.0);
    CHECK(est.standard_error < 0.01);
    CHECK(std::abs(est.mean - 2.0) < 5.0 * est.standard_error);
}

TEST_CASE("partition estimate matches the exact state norm on small graphs") {
    for (const char* text :
         {"e 0 1 1\ne 1 2 1\n", "e 0 1 1\ne 1 2 1\ne 0 2 1\n", "e 0 1 2\n"}) {
        auto g = parse_graph(text).graph;
        auto s = infer_spins(g);
        const double exact = vbs_schwinger(g, s).squared_norm();
        auto est = mc_partition(g, s, 400000, 77);
        CAPTURE(text);
        CHECK(std::abs(est.mean - exact) < 5.0 * est.standard_error);
    }
}

TEST_CASE("partition estimate is identical across thread counts") {
    auto g = parse_graph("e 0 1 1\ne 1 2 1\ne 0 2 1\n").graph;
    auto s = infer_spins(g);
    auto a = mc_partition(g, s, 50000, 5, /*threads=*/1);
    auto b = mc_partition(g, s, 50000, 5, /*threads=*/2);
    auto c = mc_partition(g, s, 50000, 5, /*threads=*/4);
    CHECK(a.mean == b.mean);
    CHECK(b.mean == c.mean);
    CHECK(a.standard_error == b.standard_error);
    CHECK(b.standard_error == c.standard_error);

    auto other_seed = mc_partition(g, s, 50000, 6);
    CHECK(other_seed.mean != a.mean);
}

TEST_CASE("partition estimator is unbiased over independent seeds") {
    auto g = parse_graph("e 0 1 1\n").graph;
    auto s = infer_spins(g);
    const int n_seeds = 30;
    double sum = 0.0, var_sum = 0.0;
    for (int k = 0; k < n_seeds; ++k) {
        auto est = mc_partition(g, s, 20000, 1000 + static_cast<std::uint64_t>(k));
        sum += est.mean;
        var_sum += est.standard_error * est.standard_error;
    }
    const double mean_of_means = sum / n_seeds;
    const double combined_stderr = std::sqrt(var_sum) / n_seeds;
    CHECK(std::abs(mean_of_means - 2.0) < 3.0 * combined_stderr);
}

TEST_CASE("partition errors") {
    auto g = parse_graph("e 0 1 1\n").graph;
    auto s = infer_spins(g);
    CHECK_THROWS_WITH_AS(mc_partition(g, s, 1, 0), doctest::Contains("InsufficientSamples"),
                         Error);
    auto bad = apply_overrides(g, s, {{0, 2}});
    CHECK_THROWS_WITH_AS(mc_partition(g, bad, 100, 0),
                         doctest::Contains("UniquenessViolated"), Error);
}
